#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relwb/error.hpp"
#include "relwb/structure.hpp"

using namespace relwb;
using testing::graph_sig;
using testing::named;

TEST_SUITE("structures") {

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature({{"E", 2}, {"E", 1}}), InputError);
  CHECK_THROWS_AS(Signature({{"E", 0}}), InputError);
  const Signature sig{{"E", 2}, {"U", 1}};
  CHECK(sig.index_of("U") == 1);
  CHECK_FALSE(sig.find("X").has_value());
  CHECK_THROWS_AS(sig.index_of("X"), InputError);
  CHECK(sig.max_arity() == 2);
  CHECK(Signature{}.max_arity() == 0);
}

TEST_CASE("tables are sorted, deduplicated and bounds-checked") {
  const auto s = Structure::from_flat(graph_sig(), 3, {{1, 0, 0, 1, 1, 0}});
  CHECK(s.tuple_count(0) == 2);
  CHECK(s.tuples(0) == std::vector<Tuple>{{0, 1}, {1, 0}});
  CHECK(s.holds(0, {1, 0}));
  CHECK_FALSE(s.holds(0, {0, 2}));
  CHECK_THROWS_AS(Structure::from_flat(graph_sig(), 2, {{0, 2}}), InputError);
  CHECK_THROWS_AS(Structure::from_flat(graph_sig(), 2, {{0}}), InputError);
}

TEST_CASE("induced substructures") {
  const auto k3 = named("K3");
  const auto e = induced_substructure(k3, std::vector<Element>{0, 1});
  CHECK(e == named("K2"));
  CHECK(induced_substructure(named("C5"), std::vector<Element>{0, 1, 2, 3, 4}) == named("C5"));
  const auto c5 = named("C5");
  const auto pair = induced_substructure(c5, std::vector<Element>{0, 2});
  CHECK(pair.size() == 2);
  CHECK(pair.atom_count() == oracle::sub(c5, {0, 2}).atom_count());
  CHECK(pair.atom_count() == 0);
  CHECK_THROWS_AS(induced_substructure(c5, std::vector<Element>{0, 0}), InputError);
}

TEST_CASE("relabel is a bijective image") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 30; ++it) {
    const auto s = testing::random_structure(Signature{{"R", 2}, {"U", 1}}, 5, 0.4, rng);
    const auto p = testing::random_permutation(5, rng);
    const auto t = relabel(s, p);
    CHECK(oracle::is_emb(s, t, p));
  }
}

TEST_CASE("qf types") {
  const auto k2 = named("K2");
  const auto t = qf_type(k2, std::vector<Element>{0, 1});
  CHECK(t.width() == 2);
  CHECK(t.eq_pattern == std::vector<int>{0, 1});
  CHECK(t.diagram == std::vector<QfAtom>{{0, {0, 1}}, {0, {1, 0}}});

  const auto loop = Structure::from_flat(graph_sig(), 1, {{0, 0}});
  const auto d = qf_type(loop, std::vector<Element>{0, 0});
  CHECK(d.eq_pattern == std::vector<int>{0, 0});
  // closed under identifying the equal indices
  CHECK(d.diagram.size() == 4);

  const auto c5 = qf_type(named("C5"), std::vector<Element>{0, 2});
  CHECK(c5.width() == 2);
  CHECK(c5.diagram.empty());
  CHECK(describe(t, k2.signature()) == "(x0,x1)[E(x0,x1) E(x1,x0)]");
}

TEST_CASE("canonical forms") {
  const auto k2 = named("K2");
  const auto cf = canonical_form(k2);
  CHECK(cf.structure == k2);
  CHECK(canonical_form(cf.structure).structure == cf.structure);
  CHECK(canonical_form(relabel(k2, std::vector<Element>{1, 0})).structure == cf.structure);

  // Graphs on 4 vertices: 11 classes, recovered from scrambled copies.
  std::mt19937_64 rng(11);
  std::set<std::string> oracle_keys;
  std::set<std::string> forms;
  oracle::for_each_structure(graph_sig(), 4, [&](const Structure& s) {
    for (int i = 0; i < 4; ++i)
      if (s.holds(0, {i, i})) return;
    for (const auto& t : s.tuples(0))
      if (!s.holds(0, {t[1], t[0]})) return;
    oracle_keys.insert(oracle::key(s));
    const auto scrambled = relabel(s, testing::random_permutation(4, rng));
    const auto form = canonical_form(scrambled);
    CHECK(oracle::is_emb(scrambled, form.structure, form.relabeling));
    forms.insert(small_canonical_key(form.structure) + "|" + std::to_string(hash_value(form.structure)));
  });
  CHECK(oracle_keys.size() == 11);
  CHECK(forms.size() == 11);
}

TEST_CASE("canonical form agrees with the brute-force isomorphism key") {
  std::mt19937_64 rng(3);
  const Signature sig{{"R", 2}, {"U", 1}};
  for (int it = 0; it < 150; ++it) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto a = testing::random_structure(sig, n, 0.35, rng);
    const auto b = rng() % 2 ? relabel(a, testing::random_permutation(n, rng))
                             : testing::random_structure(sig, n, 0.35, rng);
    const bool iso = oracle::key(a) == oracle::key(b);
    CHECK((canonical_form(a).structure == canonical_form(b).structure) == iso);
    CHECK((small_canonical_key(a) == small_canonical_key(b)) == iso);
  }
}

TEST_CASE("reducts") {
  const auto base = graph_sig();
  const ReductDefinition n_def(base, {{"N", 2,
                                        {{{Literal::Kind::negated_atom, 0, {0, 1}},
                                          {Literal::Kind::not_equal, 0, {0, 1}}}}}});
  CHECK(apply_reduct(n_def, named("K2")).tuple_count(0) == 0);

  const auto c5 = named("C5");
  const auto nc5 = apply_reduct(n_def, c5);
  std::size_t expected = 0;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      if (x != y && !c5.holds(0, {x, y})) {
        ++expected;
        CHECK(nc5.holds(0, {x, y}));
      }
  CHECK(expected == 10);
  CHECK(nc5.tuple_count(0) == 10);

  const ReductDefinition taut(base, {{"R", 1, {{{Literal::Kind::equal, 0, {0, 0}}}}}});
  CHECK(apply_reduct(taut, c5).tuple_count(0) == 5);
  CHECK(apply_reduct(ReductDefinition::identity(base), c5) == c5);
  CHECK_THROWS_AS(ReductDefinition(base, {{"R", 1, {{{Literal::Kind::atom, 0, {0}}}}}}), InputError);
  CHECK_THROWS_AS(ReductDefinition(base, {{"R", 1, {{{Literal::Kind::equal, 0, {0, 1}}}}}}), InputError);
  CHECK_THROWS_AS(ReductDefinition::keep(base, {"X"}), InputError);
}

TEST_CASE("complement expansion") {
  const Signature u{{"U", 1}};
  const auto full = Structure::from_flat(u, 3, {{0, 1, 2}});
  const auto fx = expand_with_complements(full);
  CHECK(fx.signature().size() == 2);
  CHECK(fx.signature()[1].name == "co-U");
  CHECK(fx.tuple_count(1) == 0);

  const auto kx = expand_with_complements(named("K2"));
  CHECK(kx.tuples(1) == std::vector<Tuple>{{0, 0}, {1, 1}});
  const auto empty = expand_with_complements(Structure(graph_sig(), 2));
  CHECK(empty.tuple_count(1) == 4);
}

}
