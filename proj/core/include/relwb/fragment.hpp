#pragma once

// Partial self-maps of a finite structure (a fragment of some larger
// structure), with explicit domain tracking.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "relwb/structure.hpp"

namespace relwb {

class FragmentMap {
 public:
  FragmentMap() = default;
  /// table[x] is the image of x, or -1 when x is outside the domain.
  FragmentMap(Structure ambient, std::vector<Element> table);

  static FragmentMap identity(const Structure& ambient);
  static FragmentMap from_pairs(Structure ambient, std::span<const std::pair<Element, Element>> pairs);

  const Structure& ambient() const noexcept { return ambient_; }
  const std::vector<Element>& table() const noexcept { return table_; }

  bool defined(Element x) const {
    return x >= 0 && x < static_cast<Element>(table_.size()) && table_[x] >= 0;
  }
  /// Throws InsufficientFragment when x is outside the domain.
  Element operator()(Element x) const;
  /// Image of a tuple, or nullopt when some entry is outside the domain.
  std::optional<Tuple> apply(std::span<const Element> t) const;

  /// Domain and range, ascending.
  std::vector<Element> domain() const;
  std::vector<Element> range() const;

  /// (after o this), defined where both steps are.
  FragmentMap then(const FragmentMap& after) const;
  /// k-fold composite; power(0) is the identity on the ambient.
  FragmentMap power(int k) const;
  FragmentMap restrict_to(std::span<const Element> subset) const;

  friend bool operator==(const FragmentMap&, const FragmentMap&) = default;

 private:
  Structure ambient_;
  std::vector<Element> table_;
};

}  // namespace relwb
