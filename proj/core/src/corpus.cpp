#include "relwb/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "relwb/error.hpp"

namespace relwb {

std::vector<Structure> minimal_forbidden(const Signature& signature, int max_size,
                                         const std::function<bool(const Structure&)>& holds) {
  std::vector<Structure> forbidden;
  std::vector<Structure> reps{Structure(signature, 0)};
  if (!holds(reps[0])) return {reps[0]};
  for (int size = 1; size <= max_size; ++size) {
    const BoundedClass cls(signature, forbidden);
    std::unordered_set<Structure> seen;
    std::vector<Structure> next;
    for (const auto& rep : reps)
      for (const auto& e : one_point_extensions(cls, rep)) {
        auto form = canonical_form(e).structure;
        if (!seen.insert(form).second) continue;
        if (holds(form)) {
          next.push_back(std::move(form));
        } else {
          forbidden.push_back(std::move(form));
        }
      }
    reps = std::move(next);
  }
  return forbidden;
}

Structure five_universal_graph() {
  static const int edges[][2] = {{0, 1}, {0, 4}, {0, 8},  {1, 4}, {1, 5}, {1, 6},  {1, 7},  {1, 8}, {1, 9},
                                 {1, 10}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {2, 10}, {3, 10}, {4, 5}, {4, 8},
                                 {4, 9}, {5, 8}, {5, 9}, {5, 10}, {7, 9}, {7, 10}, {8, 9}};
  StructureBuilder b(Signature{{"E", 2}}, 11);
  for (const auto& e : edges) b.add_symmetric("E", e[0], e[1]);
  return b.build();
}

namespace {

using Pred = std::function<bool(const Structure&)>;

bool irreflexive(const Structure& s, std::size_t r) {
  for (Element x = 0; x < s.size(); ++x)
    if (s.holds(r, {x, x})) return false;
  return true;
}

bool symmetric(const Structure& s, std::size_t r) {
  for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
    auto t = s.tuple(r, i);
    if (!s.holds(r, {t[1], t[0]})) return false;
  }
  return true;
}

bool transitive(const Structure& s, std::size_t r) {
  const int n = s.size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (s.holds(r, {x, y}) && s.holds(r, {y, z}) && !s.holds(r, {x, z})) return false;
  return true;
}

// Strict linear order when `total`, strict partial order otherwise.
bool strict_order(const Structure& s, std::size_t r, bool total) {
  if (!irreflexive(s, r) || !transitive(s, r)) return false;
  for (Element x = 0; x < s.size(); ++x)
    for (Element y = x + 1; y < s.size(); ++y) {
      const bool a = s.holds(r, {x, y});
      const bool b = s.holds(r, {y, x});
      if (a && b) return false;
      if (total && !a && !b) return false;
    }
  return true;
}

bool simple_graph(const Structure& s, std::size_t r) { return irreflexive(s, r) && symmetric(s, r); }

bool triangle_free(const Structure& s) {
  const int n = s.size();
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      for (Element z = y + 1; z < n; ++z)
        if (s.holds(0, {x, y}) && s.holds(0, {y, z}) && s.holds(0, {x, z})) return false;
  return true;
}

bool tournament(const Structure& s) {
  if (!irreflexive(s, 0)) return false;
  for (Element x = 0; x < s.size(); ++x)
    for (Element y = x + 1; y < s.size(); ++y)
      if (s.holds(0, {x, y}) == s.holds(0, {y, x})) return false;
  return true;
}

// Relations E, N, S, < (binary) and P (unary).
bool counterexample(const Structure& s) {
  enum { E, N, S, L, P };
  const int n = s.size();
  for (std::size_t r : {E, N, S, L})
    if (!irreflexive(s, r)) return false;
  if (!strict_order(s, L, true) || !symmetric(s, S) || !symmetric(s, E)) return false;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (x == y) continue;
      const bool sxy = s.holds(S, {x, y});
      const bool exy = s.holds(E, {x, y});
      if (exy && sxy) return false;
      if (s.holds(N, {x, y}) != (!sxy && !exy)) return false;
      for (Element z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const bool syz = s.holds(S, {y, z});
        const bool sxz = s.holds(S, {x, z});
        if (!sxy && !syz && sxz) return false;  // non-S is an equivalence
        if (sxy && syz && sxz) return false;    // at most two classes
      }
    }
  int marked = 0;
  for (Element x = 0; x < n; ++x)
    if (s.holds(P, {x})) {
      ++marked;
      for (Element y = 0; y < n; ++y)
        if (s.holds(E, {x, y})) return false;
    }
  return marked <= 1;
}

bool bounded_two_colors(const Structure& s) {
  enum { R, B };
  if (!simple_graph(s, R) || !simple_graph(s, B)) return false;
  for (Element x = 0; x < s.size(); ++x) {
    int degree = 0;
    for (Element y = 0; y < s.size(); ++y) {
      const bool r = s.holds(R, {x, y});
      const bool b = s.holds(B, {x, y});
      if (r && b) return false;
      degree += (r || b) ? 1 : 0;
    }
    if (degree > 1) return false;
  }
  return true;
}

bool isolated_marks(const Structure& s) {
  if (!simple_graph(s, 0)) return false;
  for (Element x = 0; x < s.size(); ++x)
    if (s.holds(1, {x}))
      for (Element y = 0; y < s.size(); ++y)
        if (s.holds(0, {x, y})) return false;
  return true;
}

Structure chain(const Signature& sig, int n, const std::vector<Element>& colored = {}) {
  StructureBuilder b(sig, n);
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y) b.add("<", {x, y});
  for (Element x : colored) b.add("C", {x});
  return b.build();
}

Structure graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  StructureBuilder b(Signature{{"E", 2}}, n);
  for (auto [x, y] : edges) b.add_symmetric("E", x, y);
  return b.build();
}

ReductDefinition non_edge_reduct(const Signature& base) {
  const std::size_t e = base.index_of("E");
  Literal edge{Literal::Kind::atom, e, {0, 1}};
  Literal not_edge{Literal::Kind::negated_atom, e, {0, 1}};
  Literal distinct{Literal::Kind::not_equal, 0, {0, 1}};
  return ReductDefinition(base, {DefinedRelation{"E", 2, {{edge}}},
                                 DefinedRelation{"N", 2, {{not_edge, distinct}}}});
}

// Chain 0 < 1 < ... < n-1 with C on odd elements; x -> 2x on the lower half.
FragmentMap recolor_to_zero(int n) {
  if (n < 2) throw InputError("recolor map needs a chain of length at least 2");
  const Signature sig{{"<", 2}, {"C", 1}};
  std::vector<Element> odd;
  for (Element x = 1; x < n; x += 2) odd.push_back(x);
  std::vector<Element> table(static_cast<std::size_t>(n), -1);
  for (Element x = 0; 2 * x < n; ++x) table[x] = 2 * x;
  return FragmentMap(chain(sig, n, odd), std::move(table));
}

// levels copies of the 5-universal graph plus two isolated points; the
// isolated points of level 0 carry U. Level i maps to level i+1.
FragmentMap shift_to_unmarked(int levels) {
  if (levels < 2) throw InputError("shift map needs at least two levels");
  const Structure y = five_universal_graph();
  const int width = y.size() + 2;
  const Signature sig{{"E", 2}, {"U", 1}};
  StructureBuilder b(sig, levels * width);
  for (int level = 0; level < levels; ++level) {
    const int off = level * width;
    for (std::size_t i = 0; i < y.tuple_count(0); ++i) {
      auto t = y.tuple(0, i);
      b.add(0, std::vector<Element>{off + t[0], off + t[1]});
    }
  }
  b.add("U", {y.size()});
  b.add("U", {y.size() + 1});
  std::vector<Element> table(static_cast<std::size_t>(levels * width), -1);
  for (Element x = 0; x < (levels - 1) * width; ++x) table[x] = x + width;
  return FragmentMap(b.build(), std::move(table));
}

CorpusEntry make_entry(std::string name, std::string doc, Signature sig, int bound_size, const Pred& pred,
                       std::vector<std::size_t> expected) {
  CorpusEntry e;
  e.name = name;
  e.doc = std::move(doc);
  e.cls = BoundedClass(sig, minimal_forbidden(sig, bound_size, pred), std::move(name));
  e.expected_age_counts = std::move(expected);
  e.reducts.push_back(NamedReduct{"identity", ReductDefinition::identity(sig)});
  return e;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  const Signature graphs{{"E", 2}};
  const Signature orders{{"<", 2}};

  {
    auto e = make_entry("simple-graphs", "Loopless undirected graphs (E stored in both orientations).", graphs, 2,
                        [](const Structure& s) { return simple_graph(s, 0); }, {1, 2, 4});
    e.structures = {{"K1", graph(1, {})}, {"K2", graph(2, {{0, 1}})}, {"P3", graph(3, {{0, 1}, {1, 2}})}};
    out.push_back(std::move(e));
  }
  {
    auto e = make_entry("triangle-free-graphs", "Simple graphs without a triangle.", graphs, 3,
                        [](const Structure& s) { return simple_graph(s, 0) && triangle_free(s); }, {1, 2, 3});
    e.structures = {{"K2", graph(2, {{0, 1}})}, {"P3", graph(3, {{0, 1}, {1, 2}})}};
    out.push_back(std::move(e));
  }
  {
    auto e = make_entry("linear-orders", "Strict linear orders.", orders, 3,
                        [](const Structure& s) { return strict_order(s, 0, true); }, {1, 1, 1});
    for (int n = 1; n <= 8; ++n) e.structures.push_back({std::to_string(n) + "-chain", chain(orders, n)});
    out.push_back(std::move(e));
  }
  {
    auto e = make_entry("tournaments", "Tournaments: exactly one direction of E between distinct points.", graphs,
                        2, tournament, {1, 1, 2});
    StructureBuilder cyc(graphs, 3);
    cyc.add("E", {0, 1}).add("E", {1, 2}).add("E", {2, 0});
    e.structures = {{"arc", Structure::from_flat(graphs, 2, {{0, 1}})}, {"3-cycle", cyc.build()}};
    out.push_back(std::move(e));
  }
  {
    auto e = make_entry("partial-orders", "Strict partial orders.", orders, 3,
                        [](const Structure& s) { return strict_order(s, 0, false); }, {1, 2, 5});
    e.structures = {{"antichain-2", Structure(orders, 2)}, {"2-chain", chain(orders, 2)}};
    out.push_back(std::move(e));
  }
  {
    const Signature sig{{"<", 2}, {"C", 1}};
    auto e = make_entry("two-colored-orders", "Strict linear orders with a unary color C (C marks color 1).", sig,
                        3, [](const Structure& s) { return strict_order(s, 0, true); }, {2, 4, 8});
    e.structures = {{"point-0", chain(sig, 1)},     {"point-1", chain(sig, 1, {0})},
                    {"2-chain-0", chain(sig, 2)},   {"3-chain-0", chain(sig, 3)},
                    {"2-chain-01", chain(sig, 2, {1})}};
    e.reducts.push_back(NamedReduct{"order", ReductDefinition::keep(sig, {"<"})});
    e.maps.push_back(NamedMap{"recolor-to-0",
                              "Chain of the given length with color 1 on odd elements; x -> 2x on the lower half, "
                              "so the range is the color-0 part.",
                              32, recolor_to_zero});
    e.pipeline_reduct = "order";
    std::vector<Element> host;
    for (Element x = 0; x < 12; ++x) host.push_back(x);
    e.transfer = TransferSetup{"recolor-to-0", host, "2-chain-0", "3-chain-0"};
    out.push_back(std::move(e));
  }
  {
    const Signature sig{{"E", 2}, {"U", 1}};
    auto e = make_entry("isolated-U", "Simple graphs with a unary mark U that is never incident to an edge.", sig, 2,
                        isolated_marks, {2, 4, 8});
    StructureBuilder marked(sig, 1);
    marked.add("U", {0});
    StructureBuilder edge(sig, 2);
    edge.add_symmetric("E", 0, 1);
    e.structures = {{"point", Structure(sig, 1)}, {"U-point", marked.build()}, {"edge", edge.build()}};
    e.reducts.push_back(NamedReduct{"E", ReductDefinition::keep(sig, {"E"})});
    e.reducts.push_back(NamedReduct{"E-N", non_edge_reduct(sig)});
    e.maps.push_back(NamedMap{"shift-to-unmarked",
                              "Copies of an 11-vertex graph containing all 5-vertex graphs, each with two isolated "
                              "points; only level 0 marks them. Level i maps to level i+1.",
                              3, shift_to_unmarked});
    e.pipeline_reduct = "E-N";
    out.push_back(std::move(e));
  }
  {
    const Signature sig{{"E", 2}, {"N", 2}, {"S", 2}, {"<", 2}, {"P", 1}};
    auto e = make_entry(
        "counterexample-13",
        "E, N, S, < binary and P unary: < is a linear order; S is the complement of an equivalence relation with at "
        "most two classes; E is a graph inside the classes (E disjoint from S); N holds on distinct pairs outside S "
        "and E; at most one point carries P and it has no E-edges. Coloring points by class defeats every host for "
        "the S-pair.",
        sig, 3, counterexample, {2, 7, 32});
    auto point = Structure(sig, 1);
    StructureBuilder marked(sig, 1);
    marked.add("P", {0});
    StructureBuilder pair(sig, 2);
    pair.add_symmetric("S", 0, 1).add("<", {0, 1});
    // Classes {0,1} and {2,3}; an E-edge inside the first class.
    StructureBuilder two(sig, 4);
    two.add_symmetric("E", 0, 1).add_symmetric("N", 2, 3);
    for (Element x : {0, 1})
      for (Element y : {2, 3}) two.add_symmetric("S", x, y);
    for (Element x = 0; x < 4; ++x)
      for (Element y = x + 1; y < 4; ++y) two.add("<", {x, y});
    StructureBuilder bad(sig, 2);
    bad.add("P", {0}).add_symmetric("E", 0, 1).add("<", {0, 1});
    e.structures = {{"point", point},
                    {"P-point", marked.build()},
                    {"S-pair", pair.build()},
                    {"two-classes", two.build()},
                    {"P-with-E", bad.build()}};
    out.push_back(std::move(e));
  }
  {
    const Signature sig{{"R", 2}, {"B", 2}};
    auto e = make_entry("ap-failure-demo",
                        "Two symmetric edge colors R and B, disjoint, with at most one edge at every point. A point "
                        "with an R-edge and the same point with a B-edge have no amalgam.",
                        sig, 3, bounded_two_colors, {1, 3, 3});
    StructureBuilder r(sig, 2);
    r.add_symmetric("R", 0, 1);
    StructureBuilder b(sig, 2);
    b.add_symmetric("B", 0, 1);
    e.structures = {{"point", Structure(sig, 1)}, {"R-edge", r.build()}, {"B-edge", b.build()}};
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

}  // namespace

const Structure& CorpusEntry::structure(std::string_view n) const {
  for (const auto& s : structures)
    if (s.name == n) return s.structure;
  throw InputError("entry " + name + " has no structure named " + std::string(n));
}

const ReductDefinition& CorpusEntry::reduct(std::string_view n) const {
  for (const auto& r : reducts)
    if (r.name == n) return r.reduct;
  throw InputError("entry " + name + " has no reduct named " + std::string(n));
}

const NamedMap& CorpusEntry::map(std::string_view n) const {
  for (const auto& m : maps)
    if (m.name == n) return m;
  throw InputError("entry " + name + " has no map named " + std::string(n));
}

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : corpus()) v.push_back(e.name);
    return v;
  }();
  return names;
}

const CorpusEntry& get_class(std::string_view name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw InputError("unknown corpus class " + std::string(name));
}

const std::vector<NamedStructure>& corpus_structures() {
  static const std::vector<NamedStructure> list = [] {
    std::vector<NamedStructure> v = {
        {"K1", graph(1, {})},
        {"K2", graph(2, {{0, 1}})},
        {"K3", graph(3, {{0, 1}, {1, 2}, {0, 2}})},
        {"P3", graph(3, {{0, 1}, {1, 2}})},
        {"C4", graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})},
        {"C5", graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})},
        {"K3+K2", graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}})},
        {"2K2", graph(4, {{0, 1}, {2, 3}})},
        {"Y11", five_universal_graph()},
    };
    const Signature orders{{"<", 2}};
    for (int n = 1; n <= 8; ++n) v.push_back({std::to_string(n) + "-chain", chain(orders, n)});
    return v;
  }();
  return list;
}

std::optional<Structure> find_corpus_structure(std::string_view name) {
  const auto slash = name.find('/');
  if (slash != std::string_view::npos) {
    const auto entry = name.substr(0, slash);
    const auto rest = name.substr(slash + 1);
    for (const auto& e : corpus())
      if (e.name == entry)
        for (const auto& s : e.structures)
          if (s.name == rest) return s.structure;
    return std::nullopt;
  }
  for (const auto& s : corpus_structures())
    if (s.name == name) return s.structure;
  return std::nullopt;
}

}  // namespace relwb
