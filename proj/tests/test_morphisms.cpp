#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relwb/error.hpp"
#include "relwb/morphisms.hpp"

using namespace relwb;
using testing::graph_sig;
using testing::named;

namespace {

std::vector<Element> first_of(const std::vector<oracle::Map>& v) { return v.empty() ? oracle::Map{} : v.front(); }

}  // namespace

TEST_SUITE("morphisms") {

TEST_CASE("small named examples") {
  CHECK(find_morphism(named("K3"), named("K2"), MorphismKind::homomorphism).status == SearchStatus::absent);
  CHECK_FALSE(oracle::hom_exists(named("K3"), named("K2")));

  const auto e = find_morphism(named("K2"), named("P3"), MorphismKind::embedding);
  REQUIRE(e.morphism);
  CHECK(oracle::is_emb(named("K2"), named("P3"), e.morphism->map));

  const auto c4 = named("C4");
  CHECK(find_morphism(c4, named("2K2"), MorphismKind::isomorphism).status == SearchStatus::absent);
  CHECK(c4.size() == named("2K2").size());
}

TEST_CASE("enumerations against brute force") {
  const Structure pt(graph_sig(), 1);
  CHECK(enumerate_embeddings(pt, named("C5")).size() == 5);
  CHECK(enumerate_embeddings(named("K2"), named("K3")).size() == 6);
  CHECK(enumerate_embeddings(named("2-chain"), named("3-chain")).size() == 3);
  CHECK(enumerate_endomorphisms(pt).size() == 1);
  CHECK(enumerate_endomorphisms(named("K2")).size() == 2);

  const auto p3 = named("P3");
  bool has_retraction = false;
  for (const auto& m : enumerate_endomorphisms(p3)) {
    CHECK(oracle::is_hom(p3, p3, m.map));
    if (!oracle::injective(m.map)) has_retraction = true;
  }
  CHECK(has_retraction);
  CHECK(enumerate_endomorphisms(p3).size() == oracle::all_homs(p3, p3).size());
  CHECK_THROWS_AS(enumerate_endomorphisms(named("Y11"), 8), InputError);
}

TEST_CASE("random structures: existence and lex-least solution match brute force") {
  std::mt19937_64 rng(42);
  const Signature sig{{"R", 2}, {"U", 1}};
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 4);
    const auto s = testing::random_structure(sig, n, 0.3, rng);
    const auto t = testing::random_structure(sig, m, 0.5, rng);

    const auto homs = oracle::all_homs(s, t);
    const auto h = find_morphism(s, t, MorphismKind::homomorphism);
    CHECK(h.morphism.has_value() == !homs.empty());
    if (h.morphism) CHECK(h.morphism->map == first_of(homs));
    CHECK(enumerate_homomorphisms(s, t).size() == homs.size());

    const auto embs = oracle::all_embs(s, t);
    const auto e = find_morphism(s, t, MorphismKind::embedding);
    CHECK(e.morphism.has_value() == !embs.empty());
    if (e.morphism) CHECK(e.morphism->map == first_of(embs));
    CHECK(enumerate_embeddings(s, t).size() == embs.size());

    const auto i = find_morphism(s, t, MorphismKind::isomorphism);
    CHECK(i.morphism.has_value() == oracle::isomorphic(s, t));
    CHECK(isomorphic(s, t) == oracle::isomorphic(s, t));
    CHECK(homomorphically_equivalent(s, t) == (oracle::hom_exists(s, t) && oracle::hom_exists(t, s)));
  }
}

TEST_CASE("verifiers") {
  const auto k2 = named("K2");
  const auto p3 = named("P3");
  CHECK(is_homomorphism(p3, k2, std::vector<Element>{0, 1, 0}));
  CHECK_FALSE(is_homomorphism(p3, k2, std::vector<Element>{0, 0, 0}));
  CHECK(is_embedding(k2, p3, std::vector<Element>{0, 1}));
  // injective homomorphism that does not reflect the missing edge
  CHECK_FALSE(is_embedding(named("2K2"), named("C4"), std::vector<Element>{0, 1, 2, 3}));
  CHECK(is_isomorphism(k2, k2, std::vector<Element>{1, 0}));
  CHECK(verify(p3, k2, Morphism{MorphismKind::homomorphism, {1, 0, 1}}));
  CHECK_FALSE(verify(p3, k2, Morphism{MorphismKind::embedding, {1, 0, 1}}));
}

TEST_CASE("extending a partial map and restricting images") {
  const auto c5 = named("C5");
  const std::vector<Element> partial{2, -1, -1, -1, -1};
  const auto r = find_morphism_extending(c5, c5, MorphismKind::isomorphism, partial);
  REQUIRE(r.morphism);
  CHECK(r.morphism->map[0] == 2);
  CHECK(oracle::is_emb(c5, c5, r.morphism->map));

  std::vector<std::vector<Element>> allowed(5, std::vector<Element>{0, 1});
  CHECK(find_morphism_extending(c5, c5, MorphismKind::homomorphism, {}, allowed).status == SearchStatus::absent);
}

TEST_CASE("budget exhaustion is a distinct outcome") {
  SearchOptions tiny;
  tiny.node_budget = 3;
  const auto r = find_morphism(named("Y11"), named("K3"), MorphismKind::homomorphism, tiny);
  CHECK(r.status == SearchStatus::budget_exceeded);
  CHECK_FALSE(r.morphism.has_value());
  CHECK_THROWS_AS(homomorphically_equivalent(named("Y11"), named("K3"), tiny), BudgetExceeded);
}

TEST_CASE("parallel search reports what the sequential search reports") {
  std::mt19937_64 rng(5);
  SearchOptions par;
  par.parallel = true;
  for (int it = 0; it < 40; ++it) {
    const auto s = testing::random_graph(6, 0.4, rng);
    const auto t = testing::random_graph(7, 0.5, rng);
    for (auto kind : {MorphismKind::homomorphism, MorphismKind::embedding}) {
      const auto a = find_morphism(s, t, kind);
      const auto b = find_morphism(s, t, kind, par);
      CHECK(a.status == b.status);
      CHECK(a.morphism == b.morphism);
      CHECK(a.nodes == b.nodes);
    }
  }
  SearchOptions tiny_par;
  tiny_par.node_budget = 50;
  tiny_par.parallel = true;
  SearchOptions tiny_seq = tiny_par;
  tiny_seq.parallel = false;
  const auto a = find_morphism(named("Y11"), named("K3"), MorphismKind::homomorphism, tiny_seq);
  const auto b = find_morphism(named("Y11"), named("K3"), MorphismKind::homomorphism, tiny_par);
  CHECK(a.status == b.status);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("cores against the exhaustive retraction oracle") {
  const auto p3 = compute_core(named("P3"));
  CHECK(oracle::isomorphic(p3.core, named("K2")));
  CHECK(p3.steps == 1);
  CHECK(oracle::is_hom(named("P3"), p3.core, p3.retraction.map));

  const auto c5 = compute_core(named("C5"));
  CHECK(c5.core == named("C5"));
  CHECK(c5.retraction.map == std::vector<Element>{0, 1, 2, 3, 4});

  const auto k = compute_core(named("K3+K2"));
  CHECK(oracle::isomorphic(k.core, named("K3")));

  std::mt19937_64 rng(9);
  for (int it = 0; it < 60; ++it) {
    const auto s = testing::random_structure(Signature{{"R", 2}}, 1 + static_cast<int>(rng() % 5), 0.35, rng);
    const auto c = compute_core(s);
    CHECK(oracle::isomorphic(c.core, oracle::core(s)));
    CHECK(oracle::is_hom(s, c.core, c.retraction.map));
    for (std::size_t i = 0; i < c.kept.size(); ++i) CHECK(c.retraction.map[c.kept[i]] == static_cast<Element>(i));
    CHECK(is_core(s) == oracle::is_core(s));
  }
}

TEST_CASE("core options") {
  CoreOptions bad;
  bad.removal_order = {0, 0, 1};
  CHECK_THROWS_AS(compute_core(named("P3"), bad), InputError);
  CoreOptions rev;
  rev.removal_order = {2, 1, 0};
  CHECK(oracle::isomorphic(compute_core(named("P3"), rev).core, named("K2")));
  CHECK(is_core(named("K3")));
  CHECK_FALSE(is_core(named("P3")));
  CHECK(is_core(Structure(graph_sig(), 0)));
}

TEST_CASE("recoverability") {
  CHECK(recoverability_check(Structure(graph_sig(), 1)).holds);
  CHECK(recoverability_check(named("C5")).holds);
  const auto p3 = recoverability_check(named("P3"));
  CHECK_FALSE(p3.holds);
  REQUIRE(p3.witness);
  CHECK_FALSE(oracle::injective(p3.witness->map));
  CHECK(oracle::is_hom(named("P3"), named("P3"), p3.witness->map));

  std::mt19937_64 rng(21);
  for (int it = 0; it < 80; ++it) {
    const auto s = testing::random_structure(Signature{{"R", 2}, {"U", 1}}, 1 + static_cast<int>(rng() % 4), 0.4, rng);
    CHECK(recoverability_check(s).holds == oracle::recoverable(s));
  }
}

TEST_CASE("homomorphic equivalence") {
  CHECK(homomorphically_equivalent(named("P3"), named("K2")));
  CHECK_FALSE(homomorphically_equivalent(named("K3"), named("K2")));
  CHECK(homomorphically_equivalent(named("C5"), named("C5")));
}

}
