#include "relwb/bounded_class.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "completion.hpp"
#include "relwb/error.hpp"
#include "relwb/parallel.hpp"

namespace relwb {

namespace detail {

PatternIndex::PatternIndex(const Signature& signature, const std::vector<Structure>& forbidden)
    : signature_(signature) {
  for (const auto& f : forbidden) {
    const int k = f.size();
    if (static_cast<int>(sizes_.size()) <= k) sizes_.resize(static_cast<std::size_t>(k) + 1, 0);
    sizes_[k] = 1;
    std::vector<Element> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      patterns_.insert(diagram(perm, [&](std::size_t r, std::span<const Element> t) {
        return f.holds(r, t);
      }));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

}  // namespace detail

BoundedClass::BoundedClass(Signature signature, std::vector<Structure> forbidden, std::string label)
    : signature_(std::move(signature)), forbidden_(std::move(forbidden)), label_(std::move(label)) {
  for (const auto& f : forbidden_)
    if (!(f.signature() == signature_))
      throw InputError("forbidden structure has a different signature");
  index_ = std::make_shared<detail::PatternIndex>(signature_, forbidden_);
}

bool member(const BoundedClass& c, const Structure& s) {
  if (!(c.signature() == s.signature())) throw InputError("signature mismatch");
  const auto& index = c.index();
  if (index.has_size(0)) return false;
  const int n = s.size();
  auto holds = [&](std::size_t r, std::span<const Element> t) { return s.holds(r, t); };
  for (int k = 1; k <= std::min(n, index.max_size()); ++k) {
    if (!index.has_size(k)) continue;
    std::vector<Element> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      if (index.forbidden(index.diagram(subset, holds))) return false;
      int q = k - 1;
      while (q >= 0 && subset[q] == n - k + q) --q;
      if (q < 0) break;
      ++subset[q];
      for (int z = q + 1; z < k; ++z) subset[z] = subset[z - 1] + 1;
    }
  }
  return true;
}

namespace {

std::vector<Structure> extensions_of_member(const BoundedClass& c, const Structure& s) {
  const int n = s.size();
  detail::PartialStructure p(c.signature(), n + 1);
  std::vector<Element> old(static_cast<std::size_t>(n));
  std::iota(old.begin(), old.end(), 0);
  p.copy_from(s, old);
  std::vector<Structure> out;
  detail::for_each_completion(c.index(), p, n, [&](const detail::PartialStructure& done) {
    out.push_back(done.to_structure());
    return true;
  });
  return out;
}

}  // namespace

std::vector<Structure> one_point_extensions(const BoundedClass& c, const Structure& s) {
  if (!member(c, s)) throw InputError("structure is not a member of the class");
  return extensions_of_member(c, s);
}

std::vector<Structure> enumerate_age(const BoundedClass& c, int n, const AgeOptions& opts) {
  if (n > opts.cap)
    throw InputError("age size " + std::to_string(n) + " exceeds the cap " + std::to_string(opts.cap));
  std::vector<Structure> out;
  const Structure empty(c.signature(), 0);
  if (!member(c, empty)) return out;
  std::vector<Structure> level{empty};
  for (int size = 1; size <= n && !level.empty(); ++size) {
    auto batches = detail::indexed_map(level.size(), opts.parallel, [&](std::size_t i) {
      std::vector<Structure> forms;
      for (auto& e : extensions_of_member(c, level[i]))
        forms.push_back(canonical_form(e).structure);
      return forms;
    });
    std::unordered_set<Structure> seen;
    std::vector<Structure> next;
    for (auto& batch : batches)
      for (auto& s : batch)
        if (seen.insert(s).second) next.push_back(std::move(s));
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace relwb
