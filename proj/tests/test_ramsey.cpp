#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relwb/corpus.hpp"
#include "relwb/error.hpp"
#include "relwb/ramsey.hpp"

using namespace relwb;
using testing::graph_sig;
using testing::named;

namespace {

// Every copy of f in the host sees at least two colors.
bool certified_bad(const Coloring& col, const Structure& f) {
  const auto inner = oracle::copies(col.pattern, f);
  for (const auto& fc : oracle::copies(f, col.host)) {
    std::set<int> seen;
    for (const auto& e : inner) {
      std::vector<Element> c;
      for (Element x : e) c.push_back(fc[x]);
      seen.insert(col.color_of(c));
    }
    if (seen.size() < 2) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("ramsey") {

TEST_CASE("colorings") {
  const auto col = make_coloring(named("2-chain"), named("4-chain"), 2,
                                 [](const std::vector<Element>& c) { return (c[0] + c[1]) % 2; });
  CHECK(col.copies.size() == 6);
  CHECK(col.color_of(std::vector<Element>{1, 2}) == 1);
  CHECK_THROWS_AS(col.color_of(std::vector<Element>{2, 1}), InputError);
  CHECK_THROWS_AS(make_coloring(named("K1"), named("K2"), 2, [](const std::vector<Element>&) { return 2; }),
                  InputError);
}

TEST_CASE("monochromatic copies") {
  const auto constant = make_coloring(named("K2"), named("C5"), 2, [](const std::vector<Element>&) { return 0; });
  const auto m = find_monochromatic_copy(constant, named("P3"));
  REQUIRE(m);
  CHECK(m->map == *oracle::first_emb(named("P3"), named("C5")));

  const auto parity = make_coloring(named("2-chain"), named("6-chain"), 2,
                                    [](const std::vector<Element>& c) { return (c[0] * 7 + c[1] * 3) % 2; });
  CHECK(find_monochromatic_copy(parity, named("3-chain")).has_value());

  const auto& ce = get_class("counterexample-13");
  const auto pair = ce.structure("S-pair");
  const auto by_class = make_coloring(ce.structure("point"), pair, 2,
                                      [](const std::vector<Element>& c) { return c[0]; });
  CHECK_FALSE(find_monochromatic_copy(by_class, pair).has_value());
}

TEST_CASE("Ramsey witnesses for chains") {
  CHECK(is_ramsey_witness(named("C5"), named("K2"), named("C5"), 1));
  CHECK(is_ramsey_witness(named("6-chain"), named("2-chain"), named("3-chain"), 2));
  CHECK_FALSE(is_ramsey_witness(named("5-chain"), named("2-chain"), named("3-chain"), 2));
  const auto bad = find_bad_coloring(named("5-chain"), named("2-chain"), named("3-chain"), 2);
  REQUIRE(bad);
  CHECK(certified_bad(*bad, named("3-chain")));
  CHECK_FALSE(find_bad_coloring(named("6-chain"), named("2-chain"), named("3-chain"), 2).has_value());
}

TEST_CASE("bad colorings agree with exhaustive search") {
  std::mt19937_64 rng(13);
  const Structure pt(graph_sig(), 1);
  for (int it = 0; it < 60; ++it) {
    const auto h = testing::random_graph(3 + static_cast<int>(rng() % 3), 0.5, rng);
    const Structure& s = it % 2 ? pt : named("K2");
    const Structure& f = it % 3 ? named("K2") : named("P3");
    if (s.size() == 2 && oracle::copies(s, h).size() > 14) continue;
    const int r = 2 + static_cast<int>(rng() % 2);
    const auto bad = find_bad_coloring(h, s, f, r);
    CHECK(bad.has_value() == oracle::bad_coloring_exists(h, s, f, r));
    if (bad) CHECK(certified_bad(*bad, f));
    RamseyOptions par;
    par.parallel = true;
    const auto pbad = find_bad_coloring(h, s, f, r, par);
    CHECK(pbad.has_value() == bad.has_value());
    if (bad && pbad) CHECK(pbad->assignment == bad->assignment);
  }
}

TEST_CASE("class coloring defeats the S-pair") {
  const auto& ce = get_class("counterexample-13");
  const auto bad = find_bad_coloring(ce.structure("two-classes"), ce.structure("point"), ce.structure("S-pair"), 2);
  REQUIRE(bad);
  CHECK(bad->assignment == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("budget") {
  RamseyOptions tiny;
  tiny.node_budget = 5;
  CHECK_THROWS_AS(find_bad_coloring(named("6-chain"), named("2-chain"), named("3-chain"), 2, tiny), BudgetExceeded);
}

TEST_CASE("witness search") {
  const auto& lo = get_class("linear-orders").cls;
  const auto one = search_witness(lo, named("1-chain"), named("2-chain"), 2, 4);
  REQUIRE(one.witness);
  CHECK(one.witness->size() == 3);

  std::vector<int> refuted;
  WitnessSearchOptions opts;
  opts.on_refuted = [&](const Structure& h, const Coloring& c) {
    refuted.push_back(h.size());
    CHECK(certified_bad(c, named("3-chain")));
  };
  const auto six = search_witness(lo, named("2-chain"), named("3-chain"), 2, 7, opts);
  REQUIRE(six.witness);
  CHECK(six.witness->size() == 6);
  CHECK(refuted == std::vector<int>{1, 2, 3, 4, 5});

  const auto& ce = get_class("counterexample-13");
  const auto none = search_witness(ce.cls, ce.structure("point"), ce.structure("S-pair"), 2, 4);
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.max_n == 4);
  CHECK(none.hosts_checked == 2 + 7 + 32 + 220);

  CHECK_THROWS_AS(search_witness(ce.cls, ce.structure("P-with-E"), ce.structure("S-pair"), 2, 3), InputError);
}

TEST_CASE("transfer along the identity reduces to a direct search") {
  const auto c = named("6-chain");
  const auto id = FragmentMap::identity(c);
  const auto col = make_coloring(named("2-chain"), c, 2,
                                 [](const std::vector<Element>& x) { return (x[0] + 2 * x[1]) % 2; });
  const std::vector<Element> host{0, 1, 2, 3, 4, 5};
  const auto t = transfer_witness(id, Morphism{MorphismKind::embedding, host}, host, named("2-chain"),
                                  named("3-chain"), col);
  CHECK(t.copy.map == find_monochromatic_copy(col, named("3-chain"))->map);
  CHECK(t.host_copy.map == t.copy.map);
}

TEST_CASE("transfer on the recolor map") {
  const auto& e = get_class("two-colored-orders");
  const auto& setup = *e.transfer;
  const auto g = e.map(setup.map).make(32);
  const auto rng_elems = g.range();
  const auto bg = induced_substructure(g.ambient(), rng_elems);
  Morphism f_emb{MorphismKind::embedding, {}};
  for (std::size_t i = 0; i < rng_elems.size(); ++i) f_emb.map.push_back(static_cast<Element>(i));
  const auto& s = e.structure(setup.pattern);
  const auto& f = e.structure(setup.target);
  std::mt19937_64 rng(99);
  for (int it = 0; it < 10; ++it) {
    const auto col = make_coloring(s, bg, 2, [&](const std::vector<Element>&) { return static_cast<int>(rng() % 2); });
    const auto t = transfer_witness(g, f_emb, setup.host, s, f, col);
    CHECK(oracle::is_emb(f, bg, t.copy.map));
    for (const auto& inner : oracle::copies(s, f)) {
      std::vector<Element> c;
      for (Element x : inner) c.push_back(t.copy.map[x]);
      CHECK(col.color_of(c) == t.color);
    }
    CHECK(oracle::is_emb(f, g.ambient(), t.host_copy.map));
  }
  std::vector<Element> outside{0, 20};
  const auto col = make_coloring(s, bg, 2, [](const std::vector<Element>&) { return 0; });
  CHECK_THROWS_AS(transfer_witness(g, f_emb, outside, s, f, col), InsufficientFragment);
}

TEST_CASE("transfer on the isolated-U map with a constant coloring") {
  const auto& e = get_class("isolated-U");
  const auto g = e.map("shift-to-unmarked").make(3);
  const auto rng_elems = g.range();
  const auto bg = induced_substructure(g.ambient(), rng_elems);
  Morphism f_emb{MorphismKind::embedding, {}};
  for (std::size_t i = 0; i < rng_elems.size(); ++i) f_emb.map.push_back(static_cast<Element>(i));
  std::vector<Element> host;
  for (Element x = 0; x < 11; ++x) host.push_back(x);
  const auto col = make_coloring(e.structure("point"), bg, 2, [](const std::vector<Element>&) { return 1; });
  const auto t = transfer_witness(g, f_emb, host, e.structure("point"), e.structure("edge"), col);
  CHECK(t.color == 1);
  CHECK(oracle::is_emb(e.structure("edge"), bg, t.copy.map));
}

}
