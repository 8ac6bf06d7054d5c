#include "relwb/fragment.hpp"

#include <algorithm>

#include "relwb/error.hpp"

namespace relwb {

FragmentMap::FragmentMap(Structure ambient, std::vector<Element> table)
    : ambient_(std::move(ambient)), table_(std::move(table)) {
  const int n = ambient_.size();
  if (static_cast<int>(table_.size()) != n) throw InputError("map table size differs from ambient size");
  for (Element y : table_)
    if (y < -1 || y >= n) throw InputError("map image " + std::to_string(y) + " outside the ambient");
}

FragmentMap FragmentMap::identity(const Structure& ambient) {
  std::vector<Element> t(static_cast<std::size_t>(ambient.size()));
  for (Element x = 0; x < ambient.size(); ++x) t[x] = x;
  return FragmentMap(ambient, std::move(t));
}

FragmentMap FragmentMap::from_pairs(Structure ambient,
                                    std::span<const std::pair<Element, Element>> pairs) {
  std::vector<Element> t(static_cast<std::size_t>(ambient.size()), -1);
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= ambient.size()) throw InputError("map argument " + std::to_string(x) + " outside the ambient");
    if (t[x] >= 0 && t[x] != y) throw InputError("map assigns two images to " + std::to_string(x));
    t[x] = y;
  }
  return FragmentMap(std::move(ambient), std::move(t));
}

Element FragmentMap::operator()(Element x) const {
  if (!defined(x)) throw InsufficientFragment("element " + std::to_string(x) + " is outside the map's domain");
  return table_[x];
}

std::optional<Tuple> FragmentMap::apply(std::span<const Element> t) const {
  Tuple out;
  out.reserve(t.size());
  for (Element x : t) {
    if (!defined(x)) return std::nullopt;
    out.push_back(table_[x]);
  }
  return out;
}

std::vector<Element> FragmentMap::domain() const {
  std::vector<Element> out;
  for (Element x = 0; x < static_cast<Element>(table_.size()); ++x)
    if (table_[x] >= 0) out.push_back(x);
  return out;
}

std::vector<Element> FragmentMap::range() const {
  std::vector<Element> out;
  for (Element y : table_)
    if (y >= 0) out.push_back(y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FragmentMap FragmentMap::then(const FragmentMap& after) const {
  if (!(ambient_ == after.ambient_)) throw InputError("composed maps live on different ambients");
  std::vector<Element> t(table_.size(), -1);
  for (std::size_t x = 0; x < t.size(); ++x)
    if (table_[x] >= 0) t[x] = after.table_[table_[x]];
  return FragmentMap(ambient_, std::move(t));
}

FragmentMap FragmentMap::power(int k) const {
  if (k < 0) throw InputError("negative power");
  FragmentMap out = identity(ambient_);
  for (int i = 0; i < k; ++i) out = out.then(*this);
  return out;
}

FragmentMap FragmentMap::restrict_to(std::span<const Element> subset) const {
  std::vector<Element> t(table_.size(), -1);
  for (Element x : subset) {
    if (x < 0 || x >= static_cast<Element>(t.size())) throw InputError("restriction outside the ambient");
    t[x] = table_[x];
  }
  return FragmentMap(ambient_, std::move(t));
}

}  // namespace relwb
