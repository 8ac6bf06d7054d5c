#pragma once

// Built-in classes, structures, reducts and fragment maps.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relwb/bounded_class.hpp"
#include "relwb/fragment.hpp"
#include "relwb/morphisms.hpp"
#include "relwb/structure.hpp"

namespace relwb {

struct NamedStructure {
  std::string name;
  Structure structure;
};

struct NamedReduct {
  std::string name;
  ReductDefinition reduct;
};

struct NamedMap {
  std::string name;
  std::string doc;
  /// Default fragment size parameter.
  int default_size = 0;
  std::function<FragmentMap(int)> make;
};

/// Sample data for the amalgam and transfer demos attached to a map.
struct TransferSetup {
  std::string map;
  std::vector<Element> host;  // ambient elements, inside dom(g)
  std::string pattern;        // entry structure names
  std::string target;
};

struct CorpusEntry {
  std::string name;
  std::string doc;
  BoundedClass cls;
  std::vector<NamedStructure> structures;
  std::vector<NamedReduct> reducts;
  std::vector<NamedMap> maps;
  /// Age sizes for member counts at sizes 1, 2, 3.
  std::vector<std::size_t> expected_age_counts;
  /// Reduct used by the pipeline demo; empty means identity.
  std::string pipeline_reduct;
  std::optional<TransferSetup> transfer;

  /// Throw InputError for unknown names.
  const Structure& structure(std::string_view name) const;
  const ReductDefinition& reduct(std::string_view name) const;
  const NamedMap& map(std::string_view name) const;
};

const std::vector<std::string>& corpus_names();
/// Throws InputError for unknown names.
const CorpusEntry& get_class(std::string_view name);

/// Structures not tied to one entry: K2, K3, P3, C4, C5, K3+K2, 2K2 (graphs)
/// and n-chain for n = 1..8 (orders).
const std::vector<NamedStructure>& corpus_structures();

/// Looks up "NAME" among corpus_structures() or "ENTRY/NAME" inside an entry.
std::optional<Structure> find_corpus_structure(std::string_view name);

/// Minimal forbidden structures of size <= max_size for a property that is
/// closed under induced substructures, in generation order.
std::vector<Structure> minimal_forbidden(const Signature& signature, int max_size,
                                         const std::function<bool(const Structure&)>& holds);

/// A graph on 11 vertices containing every graph on 5 vertices as an induced
/// subgraph.
Structure five_universal_graph();

}  // namespace relwb
