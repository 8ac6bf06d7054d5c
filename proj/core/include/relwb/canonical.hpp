#pragma once

// Canonicity and range-rigidity of fragment maps, type maps and their
// idempotent powers, the class induced by the range of a map, enlarged bound
// sets, reduct restriction, brute-force canonisation and the core pipeline.
// Every verdict is relative to the given fragment and width.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relwb/bounded_class.hpp"
#include "relwb/fragment.hpp"
#include "relwb/morphisms.hpp"

namespace relwb {

/// Maximum arity of the signature (at least 1).
int default_width(const Signature& signature);

struct CanonicalVerdict {
  bool holds = true;
  /// Two tuples of equal type whose images differ in type; `first` is the
  /// earliest tuple of that type, `second` the earliest conflicting one.
  std::optional<std::pair<Tuple, Tuple>> witness;
  int width = 0;
  int fragment_size = 0;
};

/// Tuples of length 1..w over dom(g), each length in lexicographic order.
CanonicalVerdict is_canonical(const FragmentMap& g, int width, bool parallel = false);

struct RangeRigidVerdict {
  bool holds = true;
  /// First tuple over dom(g) whose type is realized in the range but not
  /// preserved by g.
  std::optional<Tuple> witness;
  int width = 0;
  int fragment_size = 0;
};

RangeRigidVerdict is_range_rigid(const FragmentMap& g, int width, bool parallel = false);

struct TypeMap {
  int width = 0;
  std::map<QfType, QfType> entries;

  friend bool operator==(const TypeMap&, const TypeMap&) = default;
};

struct TypeMapReport {
  TypeMap map;
  /// Realized types over dom(g) and over the image of dom(g).
  std::size_t domain_types = 0;
  std::size_t image_types = 0;
};

/// Throws InputError when g is not canonical at this width.
TypeMapReport induced_type_map(const FragmentMap& g, int width, bool parallel = false);

/// a then b; entries whose image leaves b's domain are dropped.
TypeMap compose(const TypeMap& a, const TypeMap& b);

/// Least k >= 1 with f^k o f^k = f^k for a self-map of {0..n-1}.
std::pair<int, std::vector<int>> idempotent_power(const std::vector<int>& f);

struct IdempotentPower {
  int k = 1;
  TypeMap power;
};

/// Throws InputError when an image type is not in the map's domain.
IdempotentPower idempotent_power(const TypeMap& t);

/// Canonical forms of the structures on 1..n elements induced by subsets of
/// g's range, ordered as enumerate_age orders them. Throws InputError when
/// g is not range-rigid at `width` (0 = default) or the range is empty, and
/// InvariantViolation when a range structure is outside `base`.
std::vector<Structure> induced_class(const FragmentMap& g, const BoundedClass& base, int n,
                                     int width = 0, bool parallel = false);

/// Forbidden list of `base` plus every base-age structure of size <= m that
/// is not isomorphic to a member of `age_small`.
BoundedClass bound_set_prime(const BoundedClass& base, int m, const std::vector<Structure>& age_small);

/// The reduct evaluated on the ambient and restricted to the range of g.
Structure restrict_reduct(const ReductDefinition& r, const Structure& ambient, const FragmentMap& g);

struct CanoniseResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<FragmentMap> map;
  std::uint64_t candidates_tested = 0;
};

/// Tries restrictions of g to subsets of its domain, largest first and then
/// lexicographically (the full domain first), and returns the first one that
/// is canonical at default width. Composing with partial isomorphisms on
/// either side reduces to such restrictions up to relabeling. `budget`
/// bounds the number of candidates tested.
CanoniseResult canonise_search(const FragmentMap& g, std::uint64_t budget);

struct PipelineStage {
  enum class Status { passed, failed, skipped };

  std::string name;
  Status status = Status::skipped;
  std::vector<std::pair<std::string, std::string>> facts;
};

std::string_view to_string(PipelineStage::Status s);

struct PipelineOptions {
  int width = 0;  // 0 = default_width
  bool parallel = false;
  SearchOptions search;
};

struct PipelineReport {
  int width = 0;
  int fragment_size = 0;
  std::vector<PipelineStage> stages;

  std::optional<CanonicalVerdict> canonical;
  std::optional<RangeRigidVerdict> range_rigid;
  std::optional<TypeMapReport> type_map;
  int power = 0;
  std::optional<FragmentMap> powered;
  std::vector<Structure> induced_age;
  std::optional<BoundedClass> bounds_prime;
  std::optional<Structure> a_g;
  std::optional<Structure> a_fragment;
  std::optional<bool> a_g_is_core;
  std::optional<bool> a_g_recoverable;
  std::optional<Morphism> recoverability_witness;

  bool passed() const;
};

/// Runs the six stages on the given g; a failing stage skips the rest.
PipelineReport core_pipeline(const BoundedClass& base, const ReductDefinition& r, const FragmentMap& g,
                             int n, const PipelineOptions& opts = {});

}  // namespace relwb
