#pragma once

// Backtracking search for homomorphisms, embeddings and isomorphisms between
// finite structures, plus endomorphism enumeration, core computation and the
// recoverability check on endomorphism monoids.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "relwb/structure.hpp"

namespace relwb {

enum class MorphismKind { homomorphism, embedding, isomorphism };

std::string_view to_string(MorphismKind kind);

/// A total map on the source domain; map[v] is the image of v. Source and
/// target are the structures the producing call was given.
struct Morphism {
  MorphismKind kind = MorphismKind::homomorphism;
  std::vector<Element> map;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct SearchOptions {
  /// Maximum number of assignments tried; must be positive.
  std::uint64_t node_budget = 50'000'000;
  /// Fan the first branching level out over worker threads. Results are
  /// identical to the sequential run, including budget verdicts.
  bool parallel = false;
};

enum class SearchStatus { found, absent, budget_exceeded };

std::string_view to_string(SearchStatus status);

struct MorphismResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<Morphism> morphism;
  std::uint64_t nodes = 0;
};

/// Lexicographically least morphism of the requested kind (elements assigned
/// in order 0, 1, ..., images tried in increasing order).
MorphismResult find_morphism(const Structure& s, const Structure& t, MorphismKind kind,
                             const SearchOptions& opts = {});

/// As find_morphism, restricted to maps extending `partial` (entries -1 are
/// free) and sending every element v into allowed[v] when `allowed` is
/// non-empty.
MorphismResult find_morphism_extending(const Structure& s, const Structure& t, MorphismKind kind,
                                       std::span<const Element> partial,
                                       const std::vector<std::vector<Element>>& allowed = {},
                                       const SearchOptions& opts = {});

/// Calls `visit` on every morphism in enumeration order until it returns
/// false. Returns false iff the budget ran out.
bool for_each_morphism(const Structure& s, const Structure& t, MorphismKind kind,
                       const std::function<bool(const std::vector<Element>&)>& visit,
                       std::span<const Element> partial = {},
                       const SearchOptions& opts = {});

std::vector<Morphism> enumerate_embeddings(const Structure& s, const Structure& t);
std::vector<Morphism> enumerate_homomorphisms(const Structure& s, const Structure& t);

/// Throws InputError when |s| exceeds `max_size`.
std::vector<Morphism> enumerate_endomorphisms(const Structure& s, int max_size = 8);

bool is_homomorphism(const Structure& s, const Structure& t, std::span<const Element> map);
bool is_embedding(const Structure& s, const Structure& t, std::span<const Element> map);
bool is_isomorphism(const Structure& s, const Structure& t, std::span<const Element> map);
bool verify(const Structure& s, const Structure& t, const Morphism& m);

bool isomorphic(const Structure& s, const Structure& t);
bool homomorphically_equivalent(const Structure& s, const Structure& t,
                                const SearchOptions& opts = {});

struct CoreOptions {
  /// Order in which elements are tried for removal; defaults to 0..n-1.
  std::vector<Element> removal_order;
  SearchOptions search;
};

struct CoreResult {
  /// Induced substructure of the input on `kept`, relabeled 0..|kept|-1.
  Structure core;
  /// Elements of the input forming the core, ascending.
  std::vector<Element> kept;
  /// Homomorphism input -> core; kept[i] maps to i.
  Morphism retraction;
  /// Number of proper retractions applied.
  int steps = 0;
};

/// Repeatedly retracts onto a proper retract until none exists.
CoreResult compute_core(const Structure& s, const CoreOptions& opts = {});

/// True iff every endomorphism is an automorphism.
bool is_core(const Structure& s, const SearchOptions& opts = {});

struct RecoverabilityResult {
  bool holds = true;
  /// First endomorphism e (enumeration order) with no e' such that e'(e(a)) = a.
  std::optional<Morphism> witness;
  std::uint64_t endomorphisms_checked = 0;
};

/// For every endomorphism e, searches an endomorphism e' with e' o e fixing
/// every element. Stops at the first failure.
RecoverabilityResult recoverability_check(const Structure& s, const SearchOptions& opts = {});

}  // namespace relwb
