#include "relwb/canonical.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "relwb/error.hpp"
#include "relwb/parallel.hpp"

namespace relwb {

int default_width(const Signature& signature) { return std::max(1, signature.max_arity()); }

namespace {

struct TypedTuple {
  Tuple tuple;
  QfType type;
  std::optional<QfType> image;
};

// All tuples of length k over `elems` in lexicographic order of positions,
// grouped by first position so the work can be split.
template <class Fn>
void for_tuples_starting_at(const std::vector<Element>& elems, int k, std::size_t first, Fn&& fn) {
  const std::size_t m = elems.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  idx[0] = first;
  Tuple t(static_cast<std::size_t>(k));
  while (true) {
    for (int p = 0; p < k; ++p) t[p] = elems[idx[p]];
    fn(t);
    int pos = k - 1;
    while (pos >= 1 && ++idx[pos] == m) idx[pos--] = 0;
    if (pos < 1) break;
  }
}

// Types and image types of every tuple of length k over dom(g), in order.
std::vector<TypedTuple> typed_tuples(const FragmentMap& g, const std::vector<Element>& dom, int k,
                                     bool with_image, bool parallel) {
  auto chunks = detail::indexed_map(dom.size(), parallel, [&](std::size_t first) {
    std::vector<TypedTuple> out;
    for_tuples_starting_at(dom, k, first, [&](const Tuple& t) {
      TypedTuple tt{t, qf_type(g.ambient(), t), std::nullopt};
      if (with_image) tt.image = qf_type(g.ambient(), *g.apply(t));
      out.push_back(std::move(tt));
    });
    return out;
  });
  std::vector<TypedTuple> all;
  for (auto& c : chunks)
    for (auto& t : c) all.push_back(std::move(t));
  return all;
}

}  // namespace

CanonicalVerdict is_canonical(const FragmentMap& g, int width, bool parallel) {
  if (width < 1) throw InputError("width must be at least 1");
  CanonicalVerdict v;
  v.width = width;
  v.fragment_size = g.ambient().size();
  const auto dom = g.domain();
  if (dom.empty()) return v;
  for (int k = 1; k <= width; ++k) {
    std::map<QfType, std::pair<Tuple, QfType>> seen;
    for (auto& tt : typed_tuples(g, dom, k, true, parallel)) {
      auto [it, fresh] = seen.try_emplace(tt.type, tt.tuple, *tt.image);
      if (!fresh && !(it->second.second == *tt.image)) {
        v.holds = false;
        v.witness = std::make_pair(it->second.first, tt.tuple);
        return v;
      }
    }
  }
  return v;
}

RangeRigidVerdict is_range_rigid(const FragmentMap& g, int width, bool parallel) {
  if (width < 1) throw InputError("width must be at least 1");
  RangeRigidVerdict v;
  v.width = width;
  v.fragment_size = g.ambient().size();
  const auto dom = g.domain();
  const auto rng = g.range();
  if (dom.empty()) return v;
  const FragmentMap id = FragmentMap::identity(g.ambient());
  for (int k = 1; k <= width; ++k) {
    std::set<QfType> range_types;
    for (auto& tt : typed_tuples(id, rng, k, false, parallel)) range_types.insert(std::move(tt.type));
    for (auto& tt : typed_tuples(g, dom, k, true, parallel)) {
      if (range_types.contains(tt.type) && !(*tt.image == tt.type)) {
        v.holds = false;
        v.witness = tt.tuple;
        return v;
      }
    }
  }
  return v;
}

TypeMapReport induced_type_map(const FragmentMap& g, int width, bool parallel) {
  const auto verdict = is_canonical(g, width, parallel);
  if (!verdict.holds) throw InputError("map is not canonical at width " + std::to_string(width));
  TypeMapReport report;
  report.map.width = width;
  const auto dom = g.domain();
  for (int k = 1; k <= width && !dom.empty(); ++k)
    for (auto& tt : typed_tuples(g, dom, k, true, parallel)) report.map.entries.emplace(tt.type, *tt.image);
  std::set<QfType> images;
  for (const auto& [from, to] : report.map.entries) images.insert(to);
  report.domain_types = report.map.entries.size();
  report.image_types = images.size();
  return report;
}

TypeMap compose(const TypeMap& a, const TypeMap& b) {
  TypeMap out;
  out.width = std::min(a.width, b.width);
  for (const auto& [x, y] : a.entries) {
    auto it = b.entries.find(y);
    if (it != b.entries.end()) out.entries.emplace(x, it->second);
  }
  return out;
}

std::pair<int, std::vector<int>> idempotent_power(const std::vector<int>& f) {
  const auto n = f.size();
  for (int y : f)
    if (y < 0 || static_cast<std::size_t>(y) >= n) throw InputError("self-map leaves its domain");
  std::vector<int> p = f;
  for (int k = 1;; ++k) {
    bool idem = true;
    for (std::size_t x = 0; x < n && idem; ++x) idem = p[p[x]] == p[x];
    if (idem) return {k, p};
    for (auto& y : p) y = f[y];
  }
}

IdempotentPower idempotent_power(const TypeMap& t) {
  std::vector<QfType> types;
  for (const auto& [from, to] : t.entries) types.push_back(from);
  std::vector<int> f;
  for (const auto& [from, to] : t.entries) {
    auto it = std::lower_bound(types.begin(), types.end(), to);
    if (it == types.end() || !(*it == to))
      throw InputError("image type of width " + std::to_string(to.width()) +
                       " is not realized in the domain of the type map");
    f.push_back(static_cast<int>(it - types.begin()));
  }
  auto [k, p] = idempotent_power(f);
  IdempotentPower out;
  out.k = k;
  out.power.width = t.width;
  for (std::size_t i = 0; i < types.size(); ++i) out.power.entries.emplace(types[i], types[p[i]]);
  return out;
}

std::vector<Structure> induced_class(const FragmentMap& g, const BoundedClass& base, int n, int width,
                                     bool parallel) {
  if (!(g.ambient().signature() == base.signature())) throw InputError("signature mismatch");
  if (width <= 0) width = default_width(base.signature());
  const auto rr = is_range_rigid(g, width, parallel);
  if (!rr.holds) throw InputError("map is not range-rigid at width " + std::to_string(width));
  const auto rng = g.range();
  if (rng.empty()) throw InputError("map has an empty range");
  const Structure& amb = g.ambient();
  const int m = static_cast<int>(rng.size());

  std::vector<Structure> out;
  for (int size = 1; size <= std::min(n, m); ++size) {
    // Split by the first chosen position.
    auto chunks = detail::indexed_map(static_cast<std::size_t>(m - size + 1), parallel, [&](std::size_t first) {
      std::vector<Structure> forms;
      std::vector<int> pick(static_cast<std::size_t>(size));
      for (int q = 0; q < size; ++q) pick[q] = static_cast<int>(first) + q;
      std::vector<Element> subset(static_cast<std::size_t>(size));
      std::unordered_set<Structure> local;
      while (true) {
        for (int q = 0; q < size; ++q) subset[q] = rng[pick[q]];
        auto form = canonical_form(induced_substructure(amb, subset)).structure;
        if (local.insert(form).second) forms.push_back(std::move(form));
        int q = size - 1;
        while (q >= 1 && pick[q] == m - size + q) --q;
        if (q < 1) break;
        ++pick[q];
        for (int z = q + 1; z < size; ++z) pick[z] = pick[z - 1] + 1;
      }
      return forms;
    });
    std::unordered_set<Structure> seen;
    std::vector<Structure> level;
    for (auto& c : chunks)
      for (auto& s : c)
        if (seen.insert(s).second) level.push_back(std::move(s));
    std::sort(level.begin(), level.end());
    for (const auto& s : level)
      if (!member(base, s)) throw InvariantViolation("a structure induced by the range lies outside the base class");
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

BoundedClass bound_set_prime(const BoundedClass& base, int m, const std::vector<Structure>& age_small) {
  std::unordered_set<Structure> small;
  for (const auto& s : age_small) small.insert(canonical_form(s).structure);
  auto forbidden = base.forbidden();
  for (const auto& s : enumerate_age(base, m, AgeOptions{std::max(m, 8), false}))
    if (!small.contains(s)) forbidden.push_back(s);
  return BoundedClass(base.signature(), std::move(forbidden), base.label() + "'");
}

Structure restrict_reduct(const ReductDefinition& r, const Structure& ambient, const FragmentMap& g) {
  return induced_substructure(apply_reduct(r, ambient), g.range());
}

CanoniseResult canonise_search(const FragmentMap& g, std::uint64_t budget) {
  CanoniseResult result;
  const auto dom = g.domain();
  const int m = static_cast<int>(dom.size());
  const int width = default_width(g.ambient().signature());
  for (int size = m; size >= 1; --size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int q = 0; q < size; ++q) pick[q] = q;
    std::vector<Element> subset(static_cast<std::size_t>(size));
    while (true) {
      if (result.candidates_tested >= budget) {
        result.status = SearchStatus::budget_exceeded;
        return result;
      }
      ++result.candidates_tested;
      for (int q = 0; q < size; ++q) subset[q] = dom[pick[q]];
      auto candidate = g.restrict_to(subset);
      if (is_canonical(candidate, width).holds) {
        result.status = SearchStatus::found;
        result.map = std::move(candidate);
        return result;
      }
      int q = size - 1;
      while (q >= 0 && pick[q] == m - size + q) --q;
      if (q < 0) break;
      ++pick[q];
      for (int z = q + 1; z < size; ++z) pick[z] = pick[z - 1] + 1;
    }
  }
  return result;
}

}  // namespace relwb
