#include "relwb/morphisms.hpp"

#include <algorithm>

#include "relwb/error.hpp"
#include "relwb/parallel.hpp"

namespace relwb {

std::string_view to_string(MorphismKind kind) {
  switch (kind) {
    case MorphismKind::homomorphism: return "homomorphism";
    case MorphismKind::embedding: return "embedding";
    case MorphismKind::isomorphism: return "isomorphism";
  }
  return "?";
}

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::absent: return "absent";
    case SearchStatus::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

enum class Outcome { exhausted, stopped, budget };

// Forward-checking backtracking over partial maps. Variables are source
// elements taken in increasing order; values are target elements in
// increasing order, so the first complete map is the lexicographically
// least one.
class Engine {
 public:
  Engine(const Structure& s, const Structure& t, MorphismKind kind)
      : s_(s), t_(t), n_(s.size()), m_(t.size()),
        injective_(kind != MorphismKind::homomorphism),
        map_(static_cast<std::size_t>(n_), -1),
        domain_(static_cast<std::size_t>(n_), std::vector<char>(static_cast<std::size_t>(m_), 1)),
        domain_size_(static_cast<std::size_t>(n_), m_),
        by_var_(static_cast<std::size_t>(n_)),
        distinct_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), injective_ ? 1 : 0) {
    const auto& sig = s.signature();
    for (std::size_t r = 0; r < sig.size(); ++r) {
      if (injective_) {
        // Every source tuple is a constraint: atoms must hold, non-atoms must not.
        const int k = sig[r].arity;
        std::vector<Element> tup(static_cast<std::size_t>(k), 0);
        if (n_ == 0) continue;
        while (true) {
          add_constraint(r, tup, s.holds(r, tup));
          int pos = k - 1;
          while (pos >= 0 && ++tup[pos] == n_) tup[pos--] = 0;
          if (pos < 0) break;
        }
      } else {
        for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
          auto tup = s.tuple(r, i);
          add_constraint(r, std::vector<Element>(tup.begin(), tup.end()), true);
        }
      }
    }
    if (!injective_) mark_forced_distinct();
  }

  // Pairs joined by a binary relation that has no loops in the target must
  // receive distinct images. When every pair is forced, every homomorphism is
  // injective.
  bool all_pairs_distinct() const {
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y)
        if (!distinct_[static_cast<std::size_t>(x) * n_ + y]) return false;
    return true;
  }

  bool restrict_allowed(const std::vector<std::vector<Element>>& allowed) {
    if (allowed.empty()) return true;
    for (int v = 0; v < n_; ++v) {
      std::vector<char> keep(static_cast<std::size_t>(m_), 0);
      for (Element y : allowed[v])
        if (y >= 0 && y < m_) keep[y] = 1;
      for (int y = 0; y < m_; ++y)
        if (domain_[v][y] && !keep[y]) remove(v, y);
      if (domain_size_[v] == 0) return false;
    }
    return true;
  }

  // Unary constraints (a single distinct variable) filter the initial domains.
  bool initial_filter() {
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      const auto& con = constraints_[c];
      if (con.distinct_vars.size() != 1) continue;
      const int v = con.distinct_vars[0];
      for (int y = 0; y < m_; ++y) {
        if (!domain_[v][y]) continue;
        map_[v] = y;
        if (!satisfied(con)) remove(v, y);
        map_[v] = -1;
      }
      if (domain_size_[v] == 0) return false;
    }
    return true;
  }

  bool assign_fixed(std::span<const Element> partial) {
    for (std::size_t v = 0; v < partial.size() && static_cast<int>(v) < n_; ++v) {
      const Element y = partial[v];
      if (y < 0) continue;
      if (y >= m_ || !domain_[v][y]) return false;
      if (!assign(static_cast<int>(v), y)) return false;
    }
    return true;
  }

  int first_free() const {
    for (int v = 0; v < n_; ++v)
      if (map_[v] < 0) return v;
    return -1;
  }

  std::vector<Element> candidates(int v) const {
    std::vector<Element> out;
    for (int y = 0; y < m_; ++y)
      if (domain_[v][y]) out.push_back(y);
    return out;
  }

  bool assign(int v, Element y) {
    map_[v] = y;
    for (int u = 0; u < n_; ++u) {
      if (map_[u] >= 0 || !distinct_[static_cast<std::size_t>(v) * n_ + u]) continue;
      if (domain_[u][y]) {
        remove(u, y);
        if (domain_size_[u] == 0) return false;
      }
    }
    for (std::size_t c : by_var_[v]) {
      const auto& con = constraints_[c];
      int open = -1;
      int open_count = 0;
      for (int x : con.distinct_vars)
        if (map_[x] < 0) {
          open = x;
          ++open_count;
        }
      if (open_count == 0) {
        if (!satisfied(con)) return false;
      } else if (open_count == 1) {
        for (int z = 0; z < m_; ++z) {
          if (!domain_[open][z]) continue;
          map_[open] = z;
          const bool ok = satisfied(con);
          map_[open] = -1;
          if (!ok) remove(open, z);
        }
        if (domain_size_[open] == 0) return false;
      }
    }
    return true;
  }

  std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t mark, int v) {
    while (trail_.size() > mark) {
      auto [u, z] = trail_.back();
      trail_.pop_back();
      domain_[u][z] = 1;
      ++domain_size_[u];
    }
    map_[v] = -1;
  }

  Outcome dfs(const std::function<bool(const std::vector<Element>&)>& visit, std::uint64_t budget,
              std::uint64_t& nodes) {
    const int v = first_free();
    if (v < 0) return visit(map_) ? Outcome::exhausted : Outcome::stopped;
    for (int y = 0; y < m_; ++y) {
      if (!domain_[v][y]) continue;
      if (++nodes > budget) return Outcome::budget;
      const std::size_t m = mark();
      if (assign(v, y)) {
        const Outcome r = dfs(visit, budget, nodes);
        if (r != Outcome::exhausted) {
          undo(m, v);
          return r;
        }
      }
      undo(m, v);
    }
    return Outcome::exhausted;
  }

  int source_size() const { return n_; }
  int target_size() const { return m_; }
  const std::vector<Element>& current() const { return map_; }

 private:
  struct Constraint {
    std::size_t rel;
    std::vector<Element> vars;
    std::vector<int> distinct_vars;
    bool positive;
  };

  void add_constraint(std::size_t rel, std::vector<Element> vars, bool positive) {
    Constraint c{rel, std::move(vars), {}, positive};
    for (Element v : c.vars)
      if (std::find(c.distinct_vars.begin(), c.distinct_vars.end(), v) == c.distinct_vars.end())
        c.distinct_vars.push_back(v);
    const std::size_t id = constraints_.size();
    for (int v : c.distinct_vars) by_var_[v].push_back(id);
    constraints_.push_back(std::move(c));
  }

  void mark_forced_distinct() {
    const auto& sig = s_.signature();
    for (std::size_t r = 0; r < sig.size(); ++r) {
      if (sig[r].arity != 2) continue;
      bool loop = false;
      for (int z = 0; z < m_ && !loop; ++z) loop = t_.holds(r, {z, z});
      if (loop) continue;
      for (std::size_t i = 0; i < s_.tuple_count(r); ++i) {
        auto tup = s_.tuple(r, i);
        if (tup[0] == tup[1]) continue;
        distinct_[static_cast<std::size_t>(tup[0]) * n_ + tup[1]] = 1;
        distinct_[static_cast<std::size_t>(tup[1]) * n_ + tup[0]] = 1;
      }
    }
  }

  bool satisfied(const Constraint& c) {
    scratch_.resize(c.vars.size());
    for (std::size_t p = 0; p < c.vars.size(); ++p) scratch_[p] = map_[c.vars[p]];
    return t_.holds(c.rel, scratch_) == c.positive;
  }

  void remove(int v, int y) {
    domain_[v][y] = 0;
    --domain_size_[v];
    trail_.emplace_back(v, y);
  }

  const Structure& s_;
  const Structure& t_;
  int n_;
  int m_;
  bool injective_;
  std::vector<Element> map_;
  std::vector<std::vector<char>> domain_;
  std::vector<int> domain_size_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> by_var_;
  std::vector<char> distinct_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<Element> scratch_;
};

void require_same_signature(const Structure& s, const Structure& t) {
  if (!(s.signature() == t.signature())) throw InputError("signature mismatch");
}

// Sets up an engine; returns false when the search space is empty before
// branching.
bool prepare(Engine& engine, const Structure& s, const Structure& t, MorphismKind kind,
             std::span<const Element> partial, const std::vector<std::vector<Element>>& allowed) {
  if (kind != MorphismKind::homomorphism && s.size() > t.size()) return false;
  if (kind == MorphismKind::isomorphism &&
      (s.size() != t.size() || s.atom_count() != t.atom_count()))
    return false;
  if (kind == MorphismKind::homomorphism && s.size() > t.size() && engine.all_pairs_distinct())
    return false;
  if (s.size() > 0 && t.size() == 0) return false;
  if (!allowed.empty() && static_cast<int>(allowed.size()) != s.size())
    throw InputError("allowed-candidate list has wrong length");
  if (!partial.empty() && static_cast<int>(partial.size()) != s.size())
    throw InputError("partial map has wrong length");
  return engine.initial_filter() && engine.restrict_allowed(allowed) && engine.assign_fixed(partial);
}

}  // namespace

MorphismResult find_morphism_extending(const Structure& s, const Structure& t, MorphismKind kind,
                                       std::span<const Element> partial,
                                       const std::vector<std::vector<Element>>& allowed,
                                       const SearchOptions& opts) {
  require_same_signature(s, t);
  if (opts.node_budget == 0) throw InputError("node budget must be positive");
  Engine engine(s, t, kind);
  MorphismResult result;
  if (!prepare(engine, s, t, kind, partial, allowed)) return result;

  std::vector<Element> found;
  auto capture = [&](const std::vector<Element>& m) {
    found = m;
    return false;
  };

  const int v0 = engine.first_free();
  if (!opts.parallel || v0 < 0) {
    const Outcome o = engine.dfs(capture, opts.node_budget, result.nodes);
    if (o == Outcome::budget) {
      result.status = SearchStatus::budget_exceeded;
    } else if (o == Outcome::stopped) {
      result.status = SearchStatus::found;
      result.morphism = Morphism{kind, found};
    }
    return result;
  }

  // One task per candidate image of the first free element; each runs with
  // the full budget, and the sequential node accounting is replayed in order.
  struct Branch {
    Outcome outcome;
    std::uint64_t nodes;
    std::vector<Element> map;
  };
  const auto cands = engine.candidates(v0);
  auto branches = detail::indexed_map(cands.size(), true, [&](std::size_t i) {
    Engine local(s, t, kind);
    prepare(local, s, t, kind, partial, allowed);
    Branch b{Outcome::exhausted, 1, {}};
    if (1 > opts.node_budget) return Branch{Outcome::budget, 1, {}};
    const std::size_t mark = local.mark();
    if (local.assign(v0, cands[i])) {
      b.outcome = local.dfs(
          [&](const std::vector<Element>& m) {
            b.map = m;
            return false;
          },
          opts.node_budget - 1, b.nodes);
    }
    local.undo(mark, v0);
    return b;
  });
  std::uint64_t total = 0;
  for (auto& b : branches) {
    total += b.nodes;
    if (total > opts.node_budget || b.outcome == Outcome::budget) {
      result.status = SearchStatus::budget_exceeded;
      result.nodes = std::min(total, opts.node_budget + 1);
      return result;
    }
    if (b.outcome == Outcome::stopped) {
      result.status = SearchStatus::found;
      result.morphism = Morphism{kind, std::move(b.map)};
      result.nodes = total;
      return result;
    }
  }
  result.nodes = total;
  return result;
}

MorphismResult find_morphism(const Structure& s, const Structure& t, MorphismKind kind,
                             const SearchOptions& opts) {
  return find_morphism_extending(s, t, kind, {}, {}, opts);
}

bool for_each_morphism(const Structure& s, const Structure& t, MorphismKind kind,
                       const std::function<bool(const std::vector<Element>&)>& visit,
                       std::span<const Element> partial, const SearchOptions& opts) {
  require_same_signature(s, t);
  Engine engine(s, t, kind);
  if (!prepare(engine, s, t, kind, partial, {})) return true;
  std::uint64_t nodes = 0;
  return engine.dfs(visit, opts.node_budget, nodes) != Outcome::budget;
}

namespace {

std::vector<Morphism> collect(const Structure& s, const Structure& t, MorphismKind kind) {
  std::vector<Morphism> out;
  const bool complete = for_each_morphism(s, t, kind, [&](const std::vector<Element>& m) {
    out.push_back(Morphism{kind, m});
    return true;
  });
  if (!complete) throw BudgetExceeded("morphism enumeration exceeded its node budget");
  return out;
}

}  // namespace

std::vector<Morphism> enumerate_embeddings(const Structure& s, const Structure& t) {
  return collect(s, t, MorphismKind::embedding);
}

std::vector<Morphism> enumerate_homomorphisms(const Structure& s, const Structure& t) {
  return collect(s, t, MorphismKind::homomorphism);
}

std::vector<Morphism> enumerate_endomorphisms(const Structure& s, int max_size) {
  if (s.size() > max_size)
    throw InputError("structure of size " + std::to_string(s.size()) +
                     " exceeds the endomorphism enumeration cap " + std::to_string(max_size));
  return collect(s, s, MorphismKind::homomorphism);
}

bool is_homomorphism(const Structure& s, const Structure& t, std::span<const Element> map) {
  if (!(s.signature() == t.signature()) || static_cast<int>(map.size()) != s.size()) return false;
  for (Element y : map)
    if (y < 0 || y >= t.size()) return false;
  std::vector<Element> image;
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      image.clear();
      for (Element e : s.tuple(r, i)) image.push_back(map[e]);
      if (!t.holds(r, image)) return false;
    }
  return true;
}

bool is_embedding(const Structure& s, const Structure& t, std::span<const Element> map) {
  if (!is_homomorphism(s, t, map)) return false;
  std::vector<char> used(static_cast<std::size_t>(t.size()), 0);
  for (Element y : map) {
    if (used[y]) return false;
    used[y] = 1;
  }
  // Atoms reflect: the number of target atoms inside the image equals the
  // number of source atoms (the map is injective on tuples).
  const auto& sig = s.signature();
  std::vector<int> inverse(static_cast<std::size_t>(t.size()), -1);
  for (std::size_t v = 0; v < map.size(); ++v) inverse[map[v]] = static_cast<int>(v);
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (std::size_t i = 0; i < t.tuple_count(r); ++i) {
      auto tup = t.tuple(r, i);
      std::vector<Element> pre;
      bool inside = true;
      for (Element e : tup) {
        if (inverse[e] < 0) {
          inside = false;
          break;
        }
        pre.push_back(inverse[e]);
      }
      if (inside && !s.holds(r, pre)) return false;
    }
  return true;
}

bool is_isomorphism(const Structure& s, const Structure& t, std::span<const Element> map) {
  return s.size() == t.size() && is_embedding(s, t, map);
}

bool verify(const Structure& s, const Structure& t, const Morphism& m) {
  switch (m.kind) {
    case MorphismKind::homomorphism: return is_homomorphism(s, t, m.map);
    case MorphismKind::embedding: return is_embedding(s, t, m.map);
    case MorphismKind::isomorphism: return is_isomorphism(s, t, m.map);
  }
  return false;
}

bool isomorphic(const Structure& s, const Structure& t) {
  if (!(s.signature() == t.signature())) return false;
  auto r = find_morphism(s, t, MorphismKind::isomorphism);
  if (r.status == SearchStatus::budget_exceeded)
    throw BudgetExceeded("isomorphism test exceeded its node budget");
  return r.status == SearchStatus::found;
}

bool homomorphically_equivalent(const Structure& s, const Structure& t, const SearchOptions& opts) {
  for (auto [a, b] : {std::pair{&s, &t}, std::pair{&t, &s}}) {
    auto r = find_morphism(*a, *b, MorphismKind::homomorphism, opts);
    if (r.status == SearchStatus::budget_exceeded)
      throw BudgetExceeded("homomorphism search exceeded its node budget");
    if (r.status == SearchStatus::absent) return false;
  }
  return true;
}

}  // namespace relwb
