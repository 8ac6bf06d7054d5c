#pragma once

// Structural Ramsey checks. A copy of S in H is an embedding S -> H, so
// automorphisms of S multiply the number of copies.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "relwb/bounded_class.hpp"
#include "relwb/fragment.hpp"
#include "relwb/morphisms.hpp"

namespace relwb {

struct Coloring {
  Structure pattern;
  Structure host;
  int colors = 2;
  /// enumerate_embeddings(pattern, host), in order.
  std::vector<Morphism> copies;
  /// assignment[i] is the color of copies[i].
  std::vector<int> assignment;

  /// Throws InputError when the copy is not listed.
  int color_of(std::span<const Element> copy) const;
};

/// Colors every copy of `pattern` in `host` with color_fn(copy).
Coloring make_coloring(const Structure& pattern, const Structure& host, int colors,
                       const std::function<int(const std::vector<Element>&)>& color_fn);

/// Least embedding f -> host on which all copies of the pattern get one color.
std::optional<Morphism> find_monochromatic_copy(const Coloring& col, const Structure& f);

struct RamseyOptions {
  std::uint64_t node_budget = 200'000'000;
  bool parallel = false;
};

/// Least bad coloring (copies in enumeration order, colors ascending, colors
/// introduced in order), or nullopt when every coloring has a monochromatic
/// copy of f. Throws BudgetExceeded when the search runs out of nodes.
std::optional<Coloring> find_bad_coloring(const Structure& h, const Structure& s, const Structure& f, int r,
                                          const RamseyOptions& opts = {});

bool is_ramsey_witness(const Structure& h, const Structure& s, const Structure& f, int r,
                       const RamseyOptions& opts = {});

struct WitnessSearchOptions {
  RamseyOptions ramsey;
  /// Called with each refuted host and its bad coloring, in order.
  std::function<void(const Structure&, const Coloring&)> on_refuted;
};

struct WitnessSearchResult {
  std::optional<Structure> witness;
  int max_n = 0;
  std::uint64_t hosts_checked = 0;
};

/// First member of the age (size, then canonical order) up to max_n that is
/// a Ramsey witness for (s, f, r). Throws InputError when s or f is not in
/// the class.
WitnessSearchResult search_witness(const BoundedClass& c, const Structure& s, const Structure& f, int r,
                                   int max_n, const WitnessSearchOptions& opts = {});

struct TransferResult {
  /// Copy of f in the B_g fragment (col_on_range.host).
  Morphism copy;
  int color = 0;
  /// Copy of f in the host, in ambient elements.
  Morphism host_copy;
  /// The pulled-back coloring of copies of s in the host.
  Coloring pulled_back;
};

/// Pulls `col_on_range` back along f_emb o g to the copies of s in the
/// structure induced by `host` (ambient elements inside dom(g)), finds a
/// monochromatic copy of f there and pushes it forward. f_emb maps the
/// structure induced by g's range (ascending) into col_on_range.host.
/// Throws InsufficientFragment when host leaves dom(g), InputError when the
/// host admits no monochromatic copy, and InvariantViolation when a pushed
/// copy fails to be an embedding.
TransferResult transfer_witness(const FragmentMap& g, const Morphism& f_emb, std::span<const Element> host,
                                const Structure& s, const Structure& f, const Coloring& col_on_range);

}  // namespace relwb
