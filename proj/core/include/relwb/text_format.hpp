#pragma once

// The workbench text format. Line oriented, '#' starts a comment, keywords
// are case-sensitive:
//
//   signature                 followed by lines   rel NAME ARITY
//   structure NAME size N     followed by atoms   REL i1 ... ik
//   forbidden                 followed by structure names
//   reduct-set NAME           starts a named group of reduct lines
//   reduct NAME ARITY := DNF  e.g.  N 2 := !E(x0,x1) & x0!=x1 | false
//   map NAME on STRUCT        followed by lines   i -> j
//   class NAME                labels the class; without a forbidden block it
//                             refers to a corpus class
//   end                       optional block terminator

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relwb/bounded_class.hpp"
#include "relwb/corpus.hpp"
#include "relwb/fragment.hpp"
#include "relwb/structure.hpp"

namespace relwb {

struct NamedFragmentMap {
  std::string name;
  std::string on;
  FragmentMap map;
};

struct WorkbenchFile {
  std::optional<Signature> signature;
  std::vector<NamedStructure> structures;
  bool has_forbidden_block = false;
  std::vector<std::string> forbidden;
  std::vector<NamedReduct> reducts;
  std::vector<NamedFragmentMap> maps;
  std::optional<std::string> class_name;

  const Structure* find_structure(std::string_view name) const;
  const ReductDefinition* find_reduct(std::string_view name) const;
  const NamedFragmentMap* find_map(std::string_view name) const;
  /// The file's own class (signature plus forbidden block) or the corpus
  /// class it refers to; nullopt when neither is present.
  std::optional<BoundedClass> bounded_class() const;
};

/// Throws ParseError with 1-based line and column.
WorkbenchFile parse_file(std::string_view text);
/// Reads and parses a file; throws InputError when it cannot be read.
WorkbenchFile load_file(const std::string& path);

std::string serialize_signature(const Signature& sig);
std::string serialize_structure(std::string_view name, const Structure& s);
std::string serialize_dnf(const Dnf& formula, const Signature& base);
/// One `reduct-set` header plus a line per defined relation.
std::string serialize_reduct(std::string_view name, const ReductDefinition& r);
std::string serialize_map(std::string_view name, std::string_view on, const FragmentMap& g);
/// Signature, forbidden structures named F1, F2, ..., the forbidden block and
/// the class label.
std::string serialize_class(const BoundedClass& c);
/// A whole corpus entry; maps are instantiated at their default size.
std::string serialize_entry(const CorpusEntry& e);

}  // namespace relwb
