#include <doctest.h>

#include "helpers.hpp"
#include "relwb/error.hpp"
#include "relwb/fragment.hpp"

using namespace relwb;
using testing::named;

TEST_SUITE("fragment") {

TEST_CASE("partial maps") {
  const auto c = named("5-chain");
  const FragmentMap g(c, {1, 2, -1, 4, -1});
  CHECK(g.defined(0));
  CHECK_FALSE(g.defined(2));
  CHECK_FALSE(g.defined(7));
  CHECK(g(3) == 4);
  CHECK_THROWS_AS(g(2), InsufficientFragment);
  CHECK(g.domain() == std::vector<Element>{0, 1, 3});
  CHECK(g.range() == std::vector<Element>{1, 2, 4});
  CHECK(g.apply(std::vector<Element>{0, 3}) == Tuple{1, 4});
  CHECK_FALSE(g.apply(std::vector<Element>{0, 2}).has_value());
  CHECK_THROWS_AS(FragmentMap(c, {0, 1}), InputError);
  CHECK_THROWS_AS(FragmentMap(c, {0, 1, 2, 3, 5}), InputError);
}

TEST_CASE("composition and powers") {
  const auto c = named("5-chain");
  const FragmentMap g(c, {1, 2, 3, 4, -1});
  CHECK(g.then(g).table() == std::vector<Element>{2, 3, 4, -1, -1});
  CHECK(g.power(0) == FragmentMap::identity(c));
  CHECK(g.power(3).table() == std::vector<Element>{3, 4, -1, -1, -1});
  CHECK(g.restrict_to(std::vector<Element>{1, 4}).table() == std::vector<Element>{-1, 2, -1, -1, -1});
  const std::pair<Element, Element> pairs[] = {{0, 4}, {4, 0}};
  const auto p = FragmentMap::from_pairs(c, pairs);
  CHECK(p.domain() == std::vector<Element>{0, 4});
  CHECK(p.then(p).table() == std::vector<Element>{0, -1, -1, -1, 4});
  const std::pair<Element, Element> clash[] = {{0, 1}, {0, 2}};
  CHECK_THROWS_AS(FragmentMap::from_pairs(c, clash), InputError);
}

}
