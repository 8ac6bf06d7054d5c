#include "relwb/ramsey.hpp"

#include <algorithm>
#include <map>

#include "relwb/error.hpp"
#include "relwb/parallel.hpp"

namespace relwb {

int Coloring::color_of(std::span<const Element> copy) const {
  auto it = std::lower_bound(copies.begin(), copies.end(), copy, [](const Morphism& m, std::span<const Element> c) {
    return std::lexicographical_compare(m.map.begin(), m.map.end(), c.begin(), c.end());
  });
  if (it == copies.end() || !std::equal(it->map.begin(), it->map.end(), copy.begin(), copy.end()))
    throw InputError("not a copy of the pattern in the host");
  return assignment[static_cast<std::size_t>(it - copies.begin())];
}

Coloring make_coloring(const Structure& pattern, const Structure& host, int colors,
                       const std::function<int(const std::vector<Element>&)>& color_fn) {
  if (colors < 1) throw InputError("at least one color is required");
  Coloring col{pattern, host, colors, enumerate_embeddings(pattern, host), {}};
  for (const auto& c : col.copies) {
    const int x = color_fn(c.map);
    if (x < 0 || x >= colors) throw InputError("color out of range");
    col.assignment.push_back(x);
  }
  return col;
}

namespace {

// Colors of the pattern copies inside copy e of f, through the copies of
// the pattern in f.
bool monochromatic(const Coloring& col, const std::vector<Morphism>& inner, const std::vector<Element>& e,
                   int* color) {
  int seen = -1;
  std::vector<Element> composed;
  for (const auto& sigma : inner) {
    composed.clear();
    for (Element x : sigma.map) composed.push_back(e[x]);
    const int c = col.color_of(composed);
    if (seen >= 0 && c != seen) return false;
    seen = c;
  }
  if (color) *color = std::max(seen, 0);
  return true;
}

}  // namespace

std::optional<Morphism> find_monochromatic_copy(const Coloring& col, const Structure& f) {
  const auto inner = enumerate_embeddings(col.pattern, f);
  std::optional<Morphism> found;
  const bool complete = for_each_morphism(f, col.host, MorphismKind::embedding, [&](const std::vector<Element>& e) {
    if (monochromatic(col, inner, e, nullptr)) {
      found = Morphism{MorphismKind::embedding, e};
      return false;
    }
    return true;
  });
  if (!complete) throw BudgetExceeded("copy enumeration exceeded its node budget");
  return found;
}

namespace {

enum class Outcome { exhausted, found, budget };

class ColoringSearch {
 public:
  ColoringSearch(int copies, int colors, std::vector<std::vector<int>> groups)
      : n_(copies), r_(colors), groups_(std::move(groups)),
        containing_(static_cast<std::size_t>(copies)),
        color_(static_cast<std::size_t>(copies), -1),
        open_(groups_.size()),
        count_(groups_.size(), std::vector<int>(static_cast<std::size_t>(colors), 0)),
        dead_(static_cast<std::size_t>(copies), std::vector<int>(static_cast<std::size_t>(colors), 0)) {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      open_[g] = static_cast<int>(groups_[g].size());
      for (int i : groups_[g]) containing_[i].push_back(g);
    }
  }

  Outcome run(int forced_second, std::uint64_t budget, std::uint64_t& nodes) {
    forced_second_ = forced_second;
    return dfs(0, -1, budget, nodes);
  }

  const std::vector<int>& solution() const { return solution_; }

 private:
  Outcome dfs(int i, int max_used, std::uint64_t budget, std::uint64_t& nodes) {
    if (i == n_) {
      solution_ = color_;
      return Outcome::found;
    }
    const int limit = std::min(r_ - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
      if (i == 1 && forced_second_ >= 0 && c != forced_second_) continue;
      if (dead_[i][c]) continue;
      if (++nodes > budget) return Outcome::budget;
      const std::size_t mark = trail_.size();
      if (assign(i, c)) {
        const Outcome o = dfs(i + 1, std::max(max_used, c), budget, nodes);
        if (o != Outcome::exhausted) {
          unassign(i, c, mark);
          return o;
        }
      }
      unassign(i, c, mark);
    }
    return Outcome::exhausted;
  }

  bool assign(int i, int c) {
    color_[i] = c;
    for (std::size_t g : containing_[i]) {
      --open_[g];
      ++count_[g][c];
    }
    for (std::size_t g : containing_[i]) {
      const int size = static_cast<int>(groups_[g].size());
      if (open_[g] == 0 && count_[g][c] == size) return false;
      if (open_[g] == 1 && count_[g][c] == size - 1) {
        // The last open copy of this group must avoid c.
        for (int j : groups_[g])
          if (color_[j] < 0) {
            ++dead_[j][c];
            trail_.emplace_back(j, c);
            if (std::all_of(dead_[j].begin(), dead_[j].end(), [](int d) { return d > 0; })) return false;
            break;
          }
      }
    }
    return true;
  }

  void unassign(int i, int c, std::size_t mark) {
    while (trail_.size() > mark) {
      auto [j, d] = trail_.back();
      trail_.pop_back();
      --dead_[j][d];
    }
    for (std::size_t g : containing_[i]) {
      ++open_[g];
      --count_[g][c];
    }
    color_[i] = -1;
  }

  int n_;
  int r_;
  int forced_second_ = -1;
  std::vector<std::vector<int>> groups_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<int> color_;
  std::vector<int> open_;
  std::vector<std::vector<int>> count_;
  std::vector<std::vector<int>> dead_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<int> solution_;
};

}  // namespace

std::optional<Coloring> find_bad_coloring(const Structure& h, const Structure& s, const Structure& f, int r,
                                          const RamseyOptions& opts) {
  if (r < 1) throw InputError("at least one color is required");
  Coloring col{s, h, r, enumerate_embeddings(s, h), {}};
  std::map<std::vector<Element>, int> index;
  for (std::size_t i = 0; i < col.copies.size(); ++i) index.emplace(col.copies[i].map, static_cast<int>(i));

  const auto inner = enumerate_embeddings(s, f);
  std::vector<std::vector<int>> groups;
  const bool complete = for_each_morphism(f, h, MorphismKind::embedding, [&](const std::vector<Element>& e) {
    std::vector<int> g;
    std::vector<Element> composed;
    for (const auto& sigma : inner) {
      composed.clear();
      for (Element x : sigma.map) composed.push_back(e[x]);
      g.push_back(index.at(composed));
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    groups.push_back(std::move(g));
    return true;
  });
  if (!complete) throw BudgetExceeded("copy enumeration exceeded its node budget");
  // A copy of f without copies of s is monochromatic under every coloring.
  for (const auto& g : groups)
    if (g.empty()) return std::nullopt;

  const int n = static_cast<int>(col.copies.size());
  Outcome outcome = Outcome::exhausted;
  std::vector<int> solution;
  if (!opts.parallel || n < 2 || r < 2) {
    ColoringSearch search(n, r, groups);
    std::uint64_t nodes = 0;
    outcome = search.run(-1, opts.node_budget, nodes);
    solution = search.solution();
  } else {
    // Branch on the color of the second copy; replay the sequential node count.
    struct Branch {
      Outcome outcome;
      std::uint64_t nodes;
      std::vector<int> solution;
    };
    auto branches = detail::indexed_map(2, true, [&](std::size_t c) {
      ColoringSearch search(n, r, groups);
      Branch b{Outcome::exhausted, 0, {}};
      b.outcome = search.run(static_cast<int>(c), opts.node_budget, b.nodes);
      b.solution = search.solution();
      return b;
    });
    std::uint64_t total = 1;
    for (auto& b : branches) {
      total += b.nodes > 0 ? b.nodes - 1 : 0;
      if (total > opts.node_budget || b.outcome == Outcome::budget) {
        outcome = Outcome::budget;
        break;
      }
      if (b.outcome == Outcome::found) {
        outcome = Outcome::found;
        solution = std::move(b.solution);
        break;
      }
    }
  }
  if (outcome == Outcome::budget) throw BudgetExceeded("coloring search exceeded its node budget");
  if (outcome == Outcome::exhausted) return std::nullopt;
  col.assignment = std::move(solution);
  return col;
}

bool is_ramsey_witness(const Structure& h, const Structure& s, const Structure& f, int r,
                       const RamseyOptions& opts) {
  return !find_bad_coloring(h, s, f, r, opts).has_value();
}

WitnessSearchResult search_witness(const BoundedClass& c, const Structure& s, const Structure& f, int r,
                                   int max_n, const WitnessSearchOptions& opts) {
  if (!member(c, s) || !member(c, f)) throw InputError("pattern and target must belong to the class");
  WitnessSearchResult result;
  result.max_n = max_n;
  for (const auto& h : enumerate_age(c, max_n, AgeOptions{std::max(max_n, 8), opts.ramsey.parallel})) {
    ++result.hosts_checked;
    auto bad = find_bad_coloring(h, s, f, r, opts.ramsey);
    if (!bad) {
      result.witness = h;
      return result;
    }
    if (opts.on_refuted) opts.on_refuted(h, *bad);
  }
  return result;
}

TransferResult transfer_witness(const FragmentMap& g, const Morphism& f_emb, std::span<const Element> host,
                                const Structure& s, const Structure& f, const Coloring& col_on_range) {
  const Structure& amb = g.ambient();
  for (Element x : host)
    if (!g.defined(x)) throw InsufficientFragment("host element " + std::to_string(x) + " is outside dom(g)");
  const auto rng = g.range();
  const Structure& bg = col_on_range.host;
  if (f_emb.map.size() != rng.size()) throw InputError("f_emb must be defined on the whole range of g");
  if (!is_embedding(induced_substructure(amb, rng), bg, f_emb.map))
    throw InputError("f_emb is not an embedding of the range into the coloring's host");

  std::vector<Element> phi;  // host position -> element of bg
  for (Element x : host) {
    const auto pos = std::lower_bound(rng.begin(), rng.end(), g(x)) - rng.begin();
    phi.push_back(f_emb.map[static_cast<std::size_t>(pos)]);
  }
  const Structure h = induced_substructure(amb, host);
  auto push = [&](const std::vector<Element>& copy) {
    std::vector<Element> out;
    for (Element x : copy) out.push_back(phi[x]);
    return out;
  };

  TransferResult result;
  result.pulled_back = make_coloring(s, h, col_on_range.colors, [&](const std::vector<Element>& copy) {
    const auto pushed = push(copy);
    if (!is_embedding(s, bg, pushed)) throw InvariantViolation("pushed copy of the pattern is not an embedding");
    return col_on_range.color_of(pushed);
  });
  auto mono = find_monochromatic_copy(result.pulled_back, f);
  if (!mono) throw InputError("host admits no monochromatic copy for the pulled-back coloring");

  result.copy = Morphism{MorphismKind::embedding, push(mono->map)};
  result.host_copy = Morphism{MorphismKind::embedding, {}};
  for (Element x : mono->map) result.host_copy.map.push_back(host[x]);
  if (!is_embedding(f, bg, result.copy.map)) throw InvariantViolation("pushed copy of f is not an embedding");
  if (!monochromatic(col_on_range, enumerate_embeddings(s, f), result.copy.map, &result.color))
    throw InvariantViolation("pushed copy of f is not monochromatic");
  return result;
}

}  // namespace relwb
