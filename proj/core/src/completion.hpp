#pragma once

// Completion of partially specified structures: tuples are in, out or free,
// and free tuples are decided so that no forbidden pattern embeds.

#include <cstdint>
#include <functional>
#include <vector>

#include "relwb/bounded_class.hpp"

namespace relwb::detail {

class PartialStructure {
 public:
  enum : std::int8_t { kFree = -1, kOut = 0, kIn = 1 };

  PartialStructure(const Signature& signature, int size);

  int size() const { return size_; }
  const Signature& signature() const { return signature_; }

  std::int8_t state(std::size_t rel, std::span<const Element> t) const {
    return cells_[rel][offset_of(size_, t)];
  }
  void set(std::size_t rel, std::span<const Element> t, std::int8_t v) {
    cells_[rel][offset_of(size_, t)] = v;
  }
  std::int8_t& cell(std::size_t rel, std::size_t off) { return cells_[rel][off]; }
  std::size_t cell_count(std::size_t rel) const { return cells_[rel].size(); }
  /// Tuple encoded by a cell offset.
  std::vector<Element> tuple_at(std::size_t rel, std::size_t off) const;

  /// Marks every tuple over `elements` according to s (s's element i is
  /// elements[i]).
  void copy_from(const Structure& s, std::span<const Element> elements);

  /// Free tuples become out.
  Structure to_structure() const;

 private:
  static std::size_t offset_of(int size, std::span<const Element> t) {
    std::size_t o = 0;
    for (Element e : t) o = o * static_cast<std::size_t>(size) + static_cast<std::size_t>(e);
    return o;
  }

  Signature signature_;
  int size_;
  std::vector<std::vector<std::int8_t>> cells_;
};

/// Calls `visit` on every completion of `p` whose induced substructures
/// avoid the patterns in `index`. Only subsets with largest element at least
/// `first_checked` are tested, so the part below must already be free of
/// forbidden patterns. Stops early when `visit` returns false; returns false
/// in that case.
bool for_each_completion(const PatternIndex& index, PartialStructure& p, int first_checked,
                         const std::function<bool(const PartialStructure&)>& visit);

}  // namespace relwb::detail
