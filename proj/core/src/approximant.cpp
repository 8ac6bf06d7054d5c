#include <algorithm>
#include <deque>

#include "relwb/amalgam.hpp"
#include "relwb/error.hpp"

namespace relwb {

namespace {

// Subsets of {0..n-1} of size <= k that contain at least one element >= from,
// in order of size and then lexicographically.
std::vector<std::vector<Element>> subsets_touching(int n, int k, int from) {
  std::vector<std::vector<Element>> out;
  if (from == 0) out.emplace_back();
  for (int size = 1; size <= std::min(k, n); ++size) {
    std::vector<Element> pick(static_cast<std::size_t>(size));
    for (int q = 0; q < size; ++q) pick[q] = q;
    while (true) {
      if (pick.back() >= from) out.push_back(pick);
      int q = size - 1;
      while (q >= 0 && pick[q] == n - size + q) --q;
      if (q < 0) break;
      ++pick[q];
      for (int z = q + 1; z < size; ++z) pick[z] = pick[z - 1] + 1;
    }
  }
  return out;
}

bool realized(const Structure& h, const ExtensionDemand& d) {
  std::vector<Element> sub = d.base;
  sub.push_back(0);
  for (Element y = 0; y < h.size(); ++y) {
    if (std::binary_search(d.base.begin(), d.base.end(), y)) continue;
    sub.back() = y;
    if (induced_substructure(h, sub) == d.extension) return true;
  }
  return false;
}

}  // namespace

ApproximantReport build_approximant(const BoundedClass& c, int k, int budget) {
  if (k < 1) throw InputError("approximant level must be at least 1");
  const auto ap = check_ap(c, k, 2 * k);
  if (!ap.holds)
    throw InputError("amalgamation fails at level " + std::to_string(k) + "; refusing to build an approximant");

  ApproximantReport report;
  report.k = k;
  report.budget = budget;
  Structure h(c.signature(), 0);
  bool over_budget = false;

  // Joint embedding of the age, greedily.
  for (const auto& m : enumerate_age(c, k)) {
    if (find_morphism(m, h, MorphismKind::embedding).status == SearchStatus::found) continue;
    AmalgamationInstance inst{Structure(c.signature(), 0), h, m, Morphism{MorphismKind::embedding, {}},
                              Morphism{MorphismKind::embedding, {}}};
    AmalgamOptions ao;
    ao.prefer_identifications = true;
    auto r = find_amalgam(c, inst, ao);
    if (!r.amalgam) throw InvariantViolation("joint embedding failed inside an amalgamation class");
    if (r.amalgam->c.size() > budget) {
      over_budget = true;
      continue;
    }
    h = r.amalgam->c;
  }

  std::deque<ExtensionDemand> queue;
  auto enqueue_from = [&](int from) {
    for (auto& sub : subsets_touching(h.size(), k - 1, from)) {
      const Structure base = induced_substructure(h, sub);
      for (auto& ext : one_point_extensions(c, base)) queue.push_back(ExtensionDemand{sub, std::move(ext)});
    }
  };
  enqueue_from(0);

  while (!queue.empty()) {
    ExtensionDemand d = std::move(queue.front());
    queue.pop_front();
    ++report.demands_processed;
    if (realized(h, d)) continue;
    std::vector<Element> ident(d.base.size());
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = static_cast<Element>(i);
    AmalgamationInstance inst{induced_substructure(h, d.base), h, d.extension,
                              Morphism{MorphismKind::embedding, d.base},
                              Morphism{MorphismKind::embedding, ident}};
    AmalgamOptions ao;
    ao.prefer_identifications = true;
    ao.size_cap = std::min(budget, h.size() + 1);
    auto r = find_amalgam(c, inst, ao);
    if (!r.amalgam) {
      report.unrealized.push_back(std::move(d));
      continue;
    }
    const int old = h.size();
    h = r.amalgam->c;
    if (h.size() > old) enqueue_from(old);
  }

  report.structure = h;
  report.complete = report.unrealized.empty() && !over_budget;
  return report;
}

}  // namespace relwb
