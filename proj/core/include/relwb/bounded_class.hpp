#pragma once

// Finitely bounded classes: a signature plus a finite list of forbidden
// structures. A structure belongs to the class iff no forbidden structure
// embeds into it.

#include <memory>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "relwb/structure.hpp"

namespace relwb {

namespace detail {

/// Lookup table for forbidden patterns: every relabeling of every forbidden
/// structure is stored as the raw bit string of its atomic diagram, so a
/// candidate subset is tested with a single hash lookup.
class PatternIndex {
 public:
  PatternIndex() = default;
  PatternIndex(const Signature& signature, const std::vector<Structure>& forbidden);

  /// Bit string of the substructure induced on `elements` (in that order).
  template <class Holds>
  std::string diagram(std::span<const Element> elements, Holds&& holds) const;

  bool forbidden(const std::string& diagram) const { return patterns_.contains(diagram); }
  bool has_size(int k) const {
    return k >= 0 && k < static_cast<int>(sizes_.size()) && sizes_[k];
  }
  int max_size() const { return static_cast<int>(sizes_.size()) - 1; }
  const Signature& signature() const { return signature_; }

 private:
  Signature signature_;
  std::unordered_set<std::string> patterns_;
  std::vector<char> sizes_;
};

template <class Holds>
std::string PatternIndex::diagram(std::span<const Element> elements, Holds&& holds) const {
  std::string bits;
  const auto m = static_cast<Element>(elements.size());
  std::vector<Element> idx;
  std::vector<Element> t;
  for (std::size_t r = 0; r < signature_.size(); ++r) {
    const int k = signature_[r].arity;
    if (m == 0) continue;
    idx.assign(static_cast<std::size_t>(k), 0);
    t.assign(static_cast<std::size_t>(k), 0);
    while (true) {
      for (int p = 0; p < k; ++p) t[p] = elements[idx[p]];
      bits.push_back(holds(r, std::span<const Element>(t)) ? '1' : '0');
      int pos = k - 1;
      while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return bits;
}

}  // namespace detail

class BoundedClass {
 public:
  BoundedClass() = default;
  /// Throws InputError when a forbidden structure has another signature.
  BoundedClass(Signature signature, std::vector<Structure> forbidden, std::string label = {});

  const Signature& signature() const noexcept { return signature_; }
  const std::vector<Structure>& forbidden() const noexcept { return forbidden_; }
  const std::string& label() const noexcept { return label_; }
  const detail::PatternIndex& index() const { return *index_; }

 private:
  Signature signature_;
  std::vector<Structure> forbidden_;
  std::string label_;
  std::shared_ptr<const detail::PatternIndex> index_;
};

/// Throws InputError on a signature mismatch.
bool member(const BoundedClass& c, const Structure& s);

/// Every class member on |s|+1 points whose restriction to the first |s|
/// points is s, as labeled structures (the new point is |s|). Throws
/// InputError when s is not a member.
std::vector<Structure> one_point_extensions(const BoundedClass& c, const Structure& s);

struct AgeOptions {
  /// Largest n accepted by enumerate_age.
  int cap = 8;
  bool parallel = false;
};

/// Members of size 1..n up to isomorphism, as canonical forms ordered by
/// size and then by structure order. Throws InputError when n exceeds the cap.
std::vector<Structure> enumerate_age(const BoundedClass& c, int n, const AgeOptions& opts = {});

}  // namespace relwb
