#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relwb/amalgam.hpp"
#include "relwb/canonical.hpp"
#include "relwb/corpus.hpp"
#include "relwb/error.hpp"

using namespace relwb;
using testing::graph_sig;

TEST_SUITE("corpus") {

TEST_CASE("lookup") {
  CHECK(corpus_names().size() == 9);
  CHECK_THROWS_AS(get_class("no-such-class"), InputError);
  CHECK(find_corpus_structure("K3").has_value());
  CHECK(find_corpus_structure("isolated-U/U-point").has_value());
  CHECK_FALSE(find_corpus_structure("isolated-U/nothing").has_value());
  CHECK_FALSE(find_corpus_structure("nothing").has_value());
  CHECK_THROWS_AS(get_class("linear-orders").structure("nothing"), InputError);
}

TEST_CASE("recorded age counts") {
  for (const auto& name : corpus_names()) {
    const auto& e = get_class(name);
    const auto age = enumerate_age(e.cls, 3);
    std::vector<std::size_t> c(3, 0);
    for (const auto& s : age) ++c[s.size() - 1];
    CHECK_MESSAGE(c == e.expected_age_counts, name);
  }
}

TEST_CASE("entry structures, reducts and maps are well formed") {
  for (const auto& name : corpus_names()) {
    const auto& e = get_class(name);
    for (const auto& r : e.reducts) CHECK(r.reduct.base() == e.cls.signature());
    for (const auto& m : e.maps) {
      const auto g = m.make(m.default_size);
      CHECK(g.ambient().signature() == e.cls.signature());
      CHECK(member(e.cls, g.ambient()));
      CHECK(is_range_rigid(g, default_width(e.cls.signature())).holds);
    }
    if (e.transfer) {
      const auto g = e.map(e.transfer->map).make(e.map(e.transfer->map).default_size);
      for (Element x : e.transfer->host) CHECK(g.defined(x));
    }
  }
}

TEST_CASE("counterexample entry") {
  const auto& e = get_class("counterexample-13");
  CHECK(member(e.cls, e.structure("two-classes")));
  CHECK_FALSE(member(e.cls, e.structure("P-with-E")));
  const auto& sig = e.cls.signature();
  StructureBuilder two_p(sig, 2);
  two_p.add("P", {0}).add("P", {1}).add_symmetric("N", 0, 1).add("<", {0, 1});
  CHECK_FALSE(member(e.cls, two_p.build()));
}

TEST_CASE("ap failure entry") {
  const auto r = check_ap(get_class("ap-failure-demo").cls, 3, 6);
  CHECK_FALSE(r.holds);
}

TEST_CASE("the universal graph contains every 5-vertex graph") {
  const auto y = five_universal_graph();
  CHECK(y.size() == 11);
  CHECK(y.tuple_count(0) == 50);
  std::set<std::string> all;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  for (std::uint32_t m = 0; m < (1u << pairs.size()); ++m) {
    StructureBuilder b(graph_sig(), 5);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (m >> k & 1) b.add_symmetric("E", pairs[k].first, pairs[k].second);
    all.insert(oracle::key(b.build()));
  }
  CHECK(all.size() == 34);
  std::set<std::string> seen;
  std::vector<char> pick(11, 0);
  std::fill(pick.begin(), pick.begin() + 5, 1);
  do {
    oracle::Map sub;
    for (int i = 0; i < 11; ++i)
      if (pick[i]) sub.push_back(i);
    seen.insert(oracle::key(oracle::sub(y, sub)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  CHECK(seen == all);
}

TEST_CASE("minimal forbidden structures") {
  // loopless symmetric relations
  const auto f = minimal_forbidden(graph_sig(), 2, [](const Structure& s) {
    for (int i = 0; i < s.size(); ++i)
      if (s.holds(0, {i, i})) return false;
    for (const auto& t : s.tuples(0))
      if (!s.holds(0, {t[1], t[0]})) return false;
    return true;
  });
  CHECK(f.size() == 2);
  const BoundedClass c(graph_sig(), f);
  for (const auto& s : enumerate_age(c, 3)) CHECK(member(get_class("simple-graphs").cls, s));
  CHECK(enumerate_age(c, 3).size() == 7);
}

}
