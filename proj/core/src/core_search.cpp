#include <algorithm>
#include <numeric>

#include "relwb/error.hpp"
#include "relwb/morphisms.hpp"

namespace relwb {

namespace {

// Least power of a self-map that is idempotent.
std::vector<Element> idempotent_power_of(const std::vector<Element>& h) {
  std::vector<Element> p = h;
  while (true) {
    bool idem = true;
    for (std::size_t x = 0; x < p.size() && idem; ++x) idem = p[p[x]] == p[x];
    if (idem) return p;
    for (auto& y : p) y = h[y];
  }
}

}  // namespace

CoreResult compute_core(const Structure& s, const CoreOptions& opts) {
  const int n = s.size();
  std::vector<Element> order = opts.removal_order;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<Element> check = order;
    std::sort(check.begin(), check.end());
    std::vector<Element> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    if (check != all) throw InputError("removal order must be a permutation of the domain");
  }

  std::vector<Element> kept(static_cast<std::size_t>(n));
  std::iota(kept.begin(), kept.end(), 0);
  std::vector<Element> image(kept);  // original element -> element of kept
  int steps = 0;

  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    const Structure current = induced_substructure(s, kept);
    for (Element v : order) {
      auto it = std::lower_bound(kept.begin(), kept.end(), v);
      if (it == kept.end() || *it != v) continue;
      const auto pos = static_cast<Element>(it - kept.begin());
      std::vector<Element> rest;
      for (Element i = 0; i < current.size(); ++i)
        if (i != pos) rest.push_back(i);
      const Structure smaller = induced_substructure(current, rest);
      auto r = find_morphism(current, smaller, MorphismKind::homomorphism, opts.search);
      if (r.status == SearchStatus::budget_exceeded)
        throw BudgetExceeded("core computation exceeded its node budget");
      if (r.status == SearchStatus::absent) continue;

      std::vector<Element> h(r.morphism->map.size());
      for (std::size_t x = 0; x < h.size(); ++x) h[x] = rest[r.morphism->map[x]];
      const auto e = idempotent_power_of(h);

      std::vector<Element> next;
      for (std::size_t x = 0; x < e.size(); ++x)
        if (e[x] == static_cast<Element>(x)) next.push_back(kept[x]);
      for (auto& y : image) {
        const auto p = std::lower_bound(kept.begin(), kept.end(), y) - kept.begin();
        y = kept[e[p]];
      }
      kept = std::move(next);
      ++steps;
      shrunk = true;
      break;
    }
  }

  CoreResult out;
  out.core = induced_substructure(s, kept);
  out.kept = kept;
  out.retraction.kind = MorphismKind::homomorphism;
  for (Element y : image)
    out.retraction.map.push_back(
        static_cast<Element>(std::lower_bound(kept.begin(), kept.end(), y) - kept.begin()));
  out.steps = steps;
  if (!is_homomorphism(s, out.core, out.retraction.map))
    throw InvariantViolation("core retraction is not a homomorphism");
  return out;
}

bool is_core(const Structure& s, const SearchOptions& opts) {
  const int n = s.size();
  for (Element v = 0; v < n; ++v) {
    std::vector<Element> rest;
    for (Element i = 0; i < n; ++i)
      if (i != v) rest.push_back(i);
    auto r = find_morphism(s, induced_substructure(s, rest), MorphismKind::homomorphism, opts);
    if (r.status == SearchStatus::budget_exceeded)
      throw BudgetExceeded("core test exceeded its node budget");
    if (r.status == SearchStatus::found) return false;
  }
  return true;
}

RecoverabilityResult recoverability_check(const Structure& s, const SearchOptions& opts) {
  RecoverabilityResult out;
  bool budget_hit = false;
  const bool complete = for_each_morphism(
      s, s, MorphismKind::homomorphism,
      [&](const std::vector<Element>& e) {
        ++out.endomorphisms_checked;
        // e' must send e(a) back to a for every a.
        std::vector<Element> partial(e.size(), -1);
        bool collapse = false;
        for (std::size_t a = 0; a < e.size(); ++a) {
          if (partial[e[a]] >= 0) {
            collapse = true;
            break;
          }
          partial[e[a]] = static_cast<Element>(a);
        }
        bool recovered = false;
        if (!collapse) {
          auto r = find_morphism_extending(s, s, MorphismKind::homomorphism, partial, {}, opts);
          if (r.status == SearchStatus::budget_exceeded) {
            budget_hit = true;
            return false;
          }
          recovered = r.status == SearchStatus::found;
        }
        if (!recovered) {
          out.holds = false;
          out.witness = Morphism{MorphismKind::homomorphism, e};
          return false;
        }
        return true;
      },
      {}, opts);
  if (budget_hit || !complete) throw BudgetExceeded("recoverability check exceeded its node budget");
  return out;
}

}  // namespace relwb
