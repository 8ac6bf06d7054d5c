#pragma once

// Amalgamation: amalgam search inside a bounded class, the amalgamation
// property checker, finite extension-complete approximants, and the amalgam
// built from a range-rigid fragment map.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relwb/bounded_class.hpp"
#include "relwb/fragment.hpp"
#include "relwb/morphisms.hpp"

namespace relwb {

struct AmalgamationInstance {
  Structure a0;
  Structure a1;
  Structure a2;
  Morphism e1;  // embedding a0 -> a1
  Morphism e2;  // embedding a0 -> a2
};

struct Amalgam {
  Structure c;
  Morphism f1;  // embedding a1 -> c
  Morphism f2;  // embedding a2 -> c
};

struct AmalgamOptions {
  /// Largest |C| considered; -1 means |A1| + |A2| - |A0| + slack.
  int size_cap = -1;
  int slack = 0;
  /// Try quotients with the most identifications first (smallest C).
  bool prefer_identifications = false;
};

struct AmalgamResult {
  std::optional<Amalgam> amalgam;
  int size_cap = 0;
  std::uint64_t quotients_tried = 0;
};

/// Searches every quotient of the disjoint sum of A1 and A2 over A0 up to
/// the cap, and every completion of the undecided tuples, in a fixed order.
/// A1 sits on the first |A1| elements of C with f1 the identity. Throws
/// InputError when the instance is malformed or not inside the class.
AmalgamResult find_amalgam(const BoundedClass& c, const AmalgamationInstance& inst,
                           const AmalgamOptions& opts = {});

/// f1, f2 embeddings, f1 o e1 = f2 o e2 and C in the class.
bool verify_amalgam(const BoundedClass& c, const AmalgamationInstance& inst, const Amalgam& am);

struct ApOptions {
  bool parallel = false;
};

struct ApReport {
  bool holds = true;
  std::optional<AmalgamationInstance> failure;
  std::uint64_t instances_checked = 0;
  int n = 0;
  int size_cap = 0;
};

/// All instances with |A0| <= |A1|, |A2| <= n over the age (A0 may be
/// empty), with e1, e2 taken up to automorphisms of A1 and A2 and A1 no later
/// than A2 in age order. Reports the first instance without an amalgam of
/// size at most size_cap.
ApReport check_ap(const BoundedClass& c, int n, int size_cap, const ApOptions& opts = {});

struct ExtensionDemand {
  /// Elements of H, ascending.
  std::vector<Element> base;
  /// Labeled one-point extension of the base; the new point is last.
  Structure extension;
};

struct ApproximantReport {
  Structure structure;
  /// Every demand realized within the budget.
  bool complete = false;
  std::vector<ExtensionDemand> unrealized;
  std::uint64_t demands_processed = 0;
  int k = 0;
  int budget = 0;
};

/// Greedy finite approximation of the generic structure: joint embedding of
/// all age members of size <= k, then a FIFO queue of one-point extension
/// demands over subsets of size <= k-1. `budget` bounds |H|. Throws
/// InputError when the amalgamation check fails at level k.
ApproximantReport build_approximant(const BoundedClass& c, int k, int budget);

struct RangeAmalgam {
  AmalgamationInstance instance;
  Amalgam amalgam;
  /// The ambient elements inducing C, ascending.
  std::vector<Element> support;
};

/// Amalgam of the structures induced by g[V] and g[W] over g[U], with
/// embeddings alpha and beta (partial isomorphisms of the ambient sending
/// g[U] into g[V] and g[W]). C is induced by g[alpha^-1[g[V]] u beta^-1[g[W]]]
/// with f1 = g o alpha^-1 and f2 = g o beta^-1. Throws InputError when g is not
/// range-rigid at `width` (0 means max(2, max arity)) or alpha, beta do not
/// fit, InsufficientFragment when a needed preimage or image is missing, and
/// InvariantViolation when the result fails verification.
RangeAmalgam explicit_amalgam_rr(const FragmentMap& g, const std::vector<Element>& u,
                                 const std::vector<Element>& v, const std::vector<Element>& w,
                                 const FragmentMap& alpha, const FragmentMap& beta, int width = 0);

}  // namespace relwb
