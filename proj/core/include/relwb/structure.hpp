#pragma once

// Finite relational structures over the domain {0, ..., n-1}: signatures,
// relation tables, induced substructures, quantifier-free types, canonical
// forms, quantifier-free reducts and complement expansion.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relwb {

using Element = int;
using Tuple = std::vector<Element>;

struct RelationSymbol {
  std::string name;
  int arity = 0;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
  friend auto operator<=>(const RelationSymbol&, const RelationSymbol&) = default;
};

/// A purely relational signature. Symbol names are unique and every arity
/// is at least one.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelationSymbol> relations);
  Signature(std::initializer_list<RelationSymbol> relations)
      : Signature(std::vector<RelationSymbol>(relations)) {}

  const std::vector<RelationSymbol>& relations() const noexcept { return relations_; }
  std::size_t size() const noexcept { return relations_.size(); }
  const RelationSymbol& operator[](std::size_t i) const { return relations_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws InputError for unknown names.
  std::size_t index_of(std::string_view name) const;
  /// Maximum arity, 0 for the empty signature.
  int max_arity() const noexcept;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<RelationSymbol> relations_;
};

/// A finite structure on {0, ..., size-1}. Each relation is stored as a
/// lexicographically sorted, duplicate-free flat array of tuples. Values are
/// immutable once built.
class Structure {
 public:
  Structure() = default;
  Structure(Signature signature, int size);
  /// `tables[r]` lists the tuples of relation r, each of the declared arity.
  Structure(Signature signature, int size, const std::vector<std::vector<Tuple>>& tables);

  /// Builds from flat tables (tuples concatenated). Sorts and removes
  /// duplicates; validates domain bounds.
  static Structure from_flat(Signature signature, int size,
                             std::vector<std::vector<Element>> flat_tables);

  const Signature& signature() const noexcept { return signature_; }
  int size() const noexcept { return size_; }

  std::size_t tuple_count(std::size_t rel) const {
    return signature_[rel].arity == 0 ? 0 : flat_[rel].size() / signature_[rel].arity;
  }
  std::span<const Element> tuple(std::size_t rel, std::size_t i) const {
    const auto k = static_cast<std::size_t>(signature_[rel].arity);
    return {flat_[rel].data() + i * k, k};
  }
  const std::vector<Element>& flat_table(std::size_t rel) const { return flat_[rel]; }
  std::vector<Tuple> tuples(std::size_t rel) const;
  std::size_t atom_count() const;

  bool holds(std::size_t rel, std::span<const Element> t) const;
  bool holds(std::size_t rel, std::initializer_list<Element> t) const {
    return holds(rel, std::span<const Element>(t.begin(), t.size()));
  }

  friend bool operator==(const Structure& a, const Structure& b);
  /// Orders by size, then table contents. Only meaningful for a common
  /// signature; structures over different signatures compare by signature
  /// symbol names last.
  friend std::strong_ordering operator<=>(const Structure& a, const Structure& b);

 private:
  void index();

  Signature signature_;
  int size_ = 0;
  std::vector<std::vector<Element>> flat_;
  std::vector<std::vector<std::uint64_t>> dense_;
};

class StructureBuilder {
 public:
  StructureBuilder(Signature signature, int size);

  StructureBuilder& add(std::size_t rel, std::span<const Element> t);
  StructureBuilder& add(std::string_view rel, std::initializer_list<Element> t);
  /// Adds t and its reverse; binary relations only.
  StructureBuilder& add_symmetric(std::string_view rel, Element a, Element b);

  Structure build() const;

 private:
  Signature signature_;
  int size_;
  std::vector<std::vector<Element>> flat_;
};

std::size_t hash_value(const Structure& s);

/// Restriction of s to `subset`; element subset[i] becomes i.
Structure induced_substructure(const Structure& s, std::span<const Element> subset);

/// Image of s under a bijection: element v becomes perm[v].
Structure relabel(const Structure& s, std::span<const Element> perm);

// ---------------------------------------------------------------------------
// Quantifier-free types

struct QfAtom {
  std::size_t rel = 0;
  Tuple indices;

  friend bool operator==(const QfAtom&, const QfAtom&) = default;
  friend auto operator<=>(const QfAtom&, const QfAtom&) = default;
};

/// Equality pattern plus atomic diagram of a tuple. `eq_pattern[i]` is the
/// least index j with a[j] == a[i]; `diagram` lists every index tuple whose
/// element tuple holds, so it is closed under replacing equal indices.
struct QfType {
  std::vector<int> eq_pattern;
  std::vector<QfAtom> diagram;

  int width() const noexcept { return static_cast<int>(eq_pattern.size()); }

  friend bool operator==(const QfType&, const QfType&) = default;
  friend auto operator<=>(const QfType&, const QfType&) = default;
};

QfType qf_type(const Structure& s, std::span<const Element> tuple);
std::string describe(const QfType& type, const Signature& signature);

// ---------------------------------------------------------------------------
// Canonical forms

struct CanonicalForm {
  Structure structure;
  /// relabeling[v] is the index of original element v in `structure`.
  std::vector<Element> relabeling;
};

/// Isomorphism-invariant representative: two structures get identical
/// `structure` fields iff they are isomorphic.
CanonicalForm canonical_form(const Structure& s);

/// Canonical key of the substructure induced on `elements`, computed by
/// exhaustive minimisation for up to five elements and via canonical_form
/// above that. Equal keys iff the induced substructures are isomorphic.
/// `holds` answers membership for tuples of original elements.
std::string small_canonical_key(
    const Signature& signature, std::span<const Element> elements,
    const std::function<bool(std::size_t, std::span<const Element>)>& holds);
std::string small_canonical_key(const Structure& s);

// ---------------------------------------------------------------------------
// Quantifier-free reducts

struct Literal {
  enum class Kind { atom, negated_atom, equal, not_equal };

  Kind kind = Kind::atom;
  std::size_t rel = 0;    // atom kinds only
  std::vector<int> vars;  // variable indices; two for (in)equalities

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Conjunction = std::vector<Literal>;
/// Disjunction of conjunctions; the empty disjunction is false and the
/// empty conjunction is true.
using Dnf = std::vector<Conjunction>;

struct DefinedRelation {
  std::string name;
  int arity = 0;
  Dnf formula;

  friend bool operator==(const DefinedRelation&, const DefinedRelation&) = default;
};

/// New relations defined by quantifier-free formulas over a base signature,
/// with variables x0 ... x(arity-1).
class ReductDefinition {
 public:
  ReductDefinition() = default;
  ReductDefinition(Signature base, std::vector<DefinedRelation> relations);

  /// R(x0..xk) := R(x0..xk) for every base relation.
  static ReductDefinition identity(const Signature& base);
  /// Identity definitions for the named base relations only.
  static ReductDefinition keep(const Signature& base, const std::vector<std::string>& names);

  const Signature& base() const noexcept { return base_; }
  const std::vector<DefinedRelation>& relations() const noexcept { return relations_; }
  Signature target_signature() const;

  bool satisfies(std::size_t defined, const Structure& s, std::span<const Element> t) const;

  friend bool operator==(const ReductDefinition&, const ReductDefinition&) = default;

 private:
  Signature base_;
  std::vector<DefinedRelation> relations_;
};

Structure apply_reduct(const ReductDefinition& r, const Structure& s);

/// Adds co-R, the complement of R in the full tuple space (diagonal
/// included), after every relation R.
Structure expand_with_complements(const Structure& s);

}  // namespace relwb

template <>
struct std::hash<relwb::Structure> {
  std::size_t operator()(const relwb::Structure& s) const noexcept { return relwb::hash_value(s); }
};
