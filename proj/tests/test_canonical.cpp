#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relwb/canonical.hpp"
#include "relwb/corpus.hpp"
#include "relwb/error.hpp"

using namespace relwb;
using testing::named;

namespace {

FragmentMap reversal(int n) {
  std::vector<Element> t;
  for (int i = 0; i < n; ++i) t.push_back(n - 1 - i);
  return FragmentMap(named((std::to_string(n) + "-chain").c_str()), t);
}

FragmentMap recolor(int n) { return get_class("two-colored-orders").map("recolor-to-0").make(n); }
FragmentMap shift() { return get_class("isolated-U").map("shift-to-unmarked").make(3); }

QfType type_of(const Structure& s, std::vector<Element> t) { return qf_type(s, t); }

std::set<std::string> keys(const std::vector<Structure>& v) {
  std::set<std::string> out;
  for (const auto& s : v) out.insert(oracle::key(s));
  return out;
}

}  // namespace

TEST_SUITE("canonical") {

TEST_CASE("default width") {
  CHECK(default_width(Signature{{"U", 1}}) == 1);
  CHECK(default_width(Signature{}) == 1);
  CHECK(default_width(get_class("two-colored-orders").cls.signature()) == 2);
}

TEST_CASE("canonicity") {
  const auto id = FragmentMap::identity(named("4-chain"));
  CHECK(is_canonical(id, 3).holds);
  CHECK(is_canonical(reversal(5), 2).holds);

  const FragmentMap fold(named("3-chain"), {0, 1, 0});
  const auto v = is_canonical(fold, 2);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->first == Tuple{0, 1});
  CHECK(v.witness->second == Tuple{0, 2});
  const auto& amb = fold.ambient();
  CHECK(type_of(amb, v.witness->first) == type_of(amb, v.witness->second));
  CHECK(type_of(amb, *fold.apply(v.witness->first)) != type_of(amb, *fold.apply(v.witness->second)));
  CHECK(v.width == 2);
  CHECK(v.fragment_size == 3);
}

TEST_CASE("canonicity agrees with a direct pairwise check") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 40; ++it) {
    const auto s = testing::random_graph(5, 0.5, rng);
    std::vector<Element> t(5);
    for (auto& x : t) x = static_cast<Element>(rng() % 6) - 1;
    const FragmentMap g(s, t);
    bool expected = true;
    const auto dom = g.domain();
    for (int w = 1; w <= 2; ++w) {
      oracle::for_each_tuple(static_cast<int>(dom.size()), w, [&](const oracle::Map& a) {
        oracle::for_each_tuple(static_cast<int>(dom.size()), w, [&](const oracle::Map& b) {
          std::vector<Element> x, y, gx, gy;
          for (auto i : a) x.push_back(dom[i]), gx.push_back(t[dom[i]]);
          for (auto i : b) y.push_back(dom[i]), gy.push_back(t[dom[i]]);
          if (qf_type(s, x) == qf_type(s, y) && qf_type(s, gx) != qf_type(s, gy)) expected = false;
        });
      });
    }
    CHECK(is_canonical(g, 2).holds == expected);
    CHECK(is_canonical(g, 2, true).witness == is_canonical(g, 2).witness);
  }
}

TEST_CASE("range rigidity") {
  CHECK(is_range_rigid(FragmentMap::identity(named("3-chain")), 2).holds);
  const auto rev = is_range_rigid(reversal(5), 2);
  CHECK_FALSE(rev.holds);
  REQUIRE(rev.witness);
  CHECK(rev.witness->size() == 2);
  CHECK(is_range_rigid(recolor(6), 2).holds);
  CHECK(is_range_rigid(shift(), 2).holds);
}

TEST_CASE("type maps") {
  const auto id = induced_type_map(FragmentMap::identity(named("3-chain")), 2);
  for (const auto& [a, b] : id.map.entries) CHECK(a == b);

  const auto c5 = named("5-chain");
  const auto rev = induced_type_map(reversal(5), 2);
  const auto lt = type_of(c5, {0, 1});
  const auto gt = type_of(c5, {1, 0});
  const auto eq = type_of(c5, {0, 0});
  CHECK(rev.map.entries.at(lt) == gt);
  CHECK(rev.map.entries.at(gt) == lt);
  CHECK(rev.map.entries.at(eq) == eq);

  const auto rc = recolor(6);
  const auto t1 = induced_type_map(rc, 1);
  const auto& amb = rc.ambient();
  CHECK(t1.map.entries.size() == 2);
  CHECK(t1.map.entries.at(type_of(amb, {1})) == type_of(amb, {0}));
  CHECK(t1.map.entries.at(type_of(amb, {0})) == type_of(amb, {0}));

  CHECK_THROWS_AS(induced_type_map(FragmentMap(named("3-chain"), {0, 1, 0}), 2), InputError);
  const auto two = compose(rev.map, rev.map);
  for (const auto& [a, b] : two.entries) CHECK(a == b);
}

TEST_CASE("idempotent powers of self-maps") {
  CHECK(idempotent_power(std::vector<int>{0, 1, 2}).first == 1);
  const auto sw = idempotent_power(std::vector<int>{1, 0});
  CHECK(sw.first == 2);
  CHECK(sw.second == std::vector<int>{0, 1});
  CHECK(idempotent_power(std::vector<int>{1, 1}).first == 1);
  std::mt19937_64 rng(2);
  for (int it = 0; it < 200; ++it) {
    std::vector<int> f(1 + rng() % 12);
    for (auto& x : f) x = static_cast<int>(rng() % f.size());
    CHECK(idempotent_power(f) == oracle::idempotent_power(f));
  }
}

TEST_CASE("idempotent powers of type maps") {
  const auto rev = induced_type_map(reversal(5), 2).map;
  const auto p = idempotent_power(rev);
  CHECK(p.k == 2);
  for (const auto& [a, b] : p.power.entries) CHECK(a == b);
  const auto t1 = induced_type_map(recolor(6), 1).map;
  CHECK(idempotent_power(t1).k == 1);
}

TEST_CASE("induced classes") {
  const auto& graphs = get_class("simple-graphs").cls;
  const auto univ = FragmentMap::identity(five_universal_graph());
  CHECK(induced_class(univ, graphs, 3) == enumerate_age(graphs, 3));

  const auto& tco = get_class("two-colored-orders");
  const auto rc = induced_class(recolor(6), tco.cls, 2);
  REQUIRE(rc.size() == 2);
  CHECK(rc[0] == tco.structure("point-0"));
  CHECK(rc[1] == tco.structure("2-chain-0"));

  const auto& iu = get_class("isolated-U");
  const auto ic = induced_class(shift(), iu.cls, 2);
  CHECK(ic.size() == 3);
  for (const auto& s : ic) CHECK(s.tuple_count(1) == 0);

  CHECK_THROWS_AS(induced_class(reversal(5), get_class("linear-orders").cls, 2), InputError);
}

TEST_CASE("induced class matches brute-force subset classification") {
  const auto g = recolor(10);
  const auto rng = g.range();
  std::set<std::string> expected;
  for (std::uint32_t m = 1; m < (1u << rng.size()); ++m) {
    if (std::popcount(m) > 3) continue;
    oracle::Map sub;
    for (std::size_t i = 0; i < rng.size(); ++i)
      if (m >> i & 1) sub.push_back(rng[i]);
    expected.insert(oracle::key(oracle::sub(g.ambient(), sub)));
  }
  CHECK(keys(induced_class(g, get_class("two-colored-orders").cls, 3)) == expected);
}

TEST_CASE("enlarged bound sets") {
  const auto& graphs = get_class("simple-graphs").cls;
  const auto same = bound_set_prime(graphs, 2, enumerate_age(graphs, 2));
  CHECK(same.forbidden().size() == graphs.forbidden().size());

  const auto& iu = get_class("isolated-U");
  const auto fp = bound_set_prime(iu.cls, 2, induced_class(shift(), iu.cls, 2));
  CHECK(fp.forbidden().size() == iu.cls.forbidden().size() + 3);
  CHECK(fp.label() == iu.cls.label() + "'");
  for (std::size_t i = iu.cls.forbidden().size(); i < fp.forbidden().size(); ++i) {
    const auto& f = fp.forbidden()[i];
    CHECK(f.tuple_count(1) > 0);
    CHECK(f.tuple_count(0) == 0);
  }

  const auto& tco = get_class("two-colored-orders");
  const auto tp = bound_set_prime(tco.cls, 2, induced_class(recolor(6), tco.cls, 2));
  CHECK(tp.forbidden().size() == tco.cls.forbidden().size() + 4);
}

TEST_CASE("reducts restricted to the range") {
  const auto c = named("4-chain");
  const auto id = FragmentMap::identity(c);
  CHECK(restrict_reduct(ReductDefinition::identity(c.signature()), c, id) == c);

  const auto& iu = get_class("isolated-U");
  const auto g = shift();
  const auto e = restrict_reduct(iu.reduct("E"), g.ambient(), g);
  const auto rng = g.range();
  CHECK(e.size() == static_cast<int>(rng.size()));
  const auto n = restrict_reduct(iu.reduct("E-N"), g.ambient(), g);
  for (int x = 0; x < e.size(); ++x)
    for (int y = 0; y < e.size(); ++y) {
      CHECK(e.holds(0, {x, y}) == g.ambient().holds(0, {rng[x], rng[y]}));
      CHECK(n.holds(1, {x, y}) == (x != y && !e.holds(0, {x, y})));
    }
}

TEST_CASE("canonisation search") {
  const auto id = FragmentMap::identity(named("4-chain"));
  const auto same = canonise_search(id, 10);
  CHECK(same.status == SearchStatus::found);
  CHECK(same.map == id);
  CHECK(same.candidates_tested == 1);

  const FragmentMap swapped(named("4-chain"), {0, 1, 3, 2});
  const auto fixed = canonise_search(swapped, 100);
  REQUIRE(fixed.status == SearchStatus::found);
  CHECK(is_canonical(*fixed.map, 2).holds);
  CHECK(fixed.map->domain().size() == 3);

  const FragmentMap big(five_universal_graph(), {0, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto cut = canonise_search(big, 2);
  CHECK(cut.status == SearchStatus::budget_exceeded);
  CHECK(cut.candidates_tested == 2);
}

TEST_CASE("pipeline on trivial inputs") {
  const auto& lo = get_class("linear-orders");
  const auto c = named("5-chain");
  const auto p = core_pipeline(lo.cls, ReductDefinition::identity(c.signature()), FragmentMap::identity(c), 3);
  CHECK(p.passed());
  REQUIRE(p.a_g);
  CHECK(*p.a_g == c);
  REQUIRE(p.bounds_prime);
  CHECK(p.bounds_prime->forbidden().size() == lo.cls.forbidden().size());
}

TEST_CASE("pipeline on the corpus maps") {
  const auto& tco = get_class("two-colored-orders");
  const auto p = core_pipeline(tco.cls, tco.reduct("order"), recolor(32), 3);
  CHECK(p.passed());
  REQUIRE(p.a_g);
  CHECK(p.a_g->size() == 16);
  CHECK(member(get_class("linear-orders").cls, *p.a_g));
  CHECK(p.a_g_is_core == true);

  const auto& iu = get_class("isolated-U");
  const auto q = core_pipeline(iu.cls, iu.reduct("E"), shift(), 3);
  REQUIRE(q.a_g);
  REQUIRE(q.a_g_is_core);
  CHECK(*q.a_g_is_core == (compute_core(*q.a_g).core.size() == q.a_g->size()));
  for (std::size_t i = 0; i < 4; ++i) CHECK(q.stages[i].status == PipelineStage::Status::passed);

  const auto bad = core_pipeline(get_class("linear-orders").cls,
                                 ReductDefinition::identity(named("3-chain").signature()),
                                 FragmentMap(named("3-chain"), {0, 1, 0}), 3);
  CHECK_FALSE(bad.passed());
  CHECK(bad.stages[0].status == PipelineStage::Status::failed);
  CHECK(bad.stages[5].status == PipelineStage::Status::skipped);
}

}
