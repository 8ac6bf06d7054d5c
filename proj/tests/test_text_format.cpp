#include <doctest.h>

#include "helpers.hpp"
#include "relwb/corpus.hpp"
#include "relwb/error.hpp"
#include "relwb/text_format.hpp"

using namespace relwb;
using testing::named;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_file(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("text_format") {

TEST_CASE("a small file") {
  const auto f = parse_file(
      "# a graph\n"
      "signature\n"
      "rel E 2\n"
      "end\n"
      "structure K2 size 2\n"
      "E 0 1\n"
      "E 1 0\n"
      "end\n");
  REQUIRE(f.signature);
  REQUIRE(f.find_structure("K2"));
  CHECK(*f.find_structure("K2") == named("K2"));
  CHECK_FALSE(f.bounded_class().has_value());
}

TEST_CASE("errors carry line and column") {
  const std::string head = "signature\nrel E 2\nstructure A size 2\n";
  CHECK(error_line(head + "E 0 2\n") == 4);
  CHECK(error_line(head + "E 0\n") == 4);
  CHECK(error_line(head + "F 0 1\n") == 4);
  CHECK(error_line("structure A size 2\n") == 1);
  CHECK(error_line(head + "forbidden\nB\n") == 5);
  CHECK(error_line(head + "map g on B\n") == 4);
  CHECK(error_line(head + "map g on A\n0 -> 5\n") == 5);
  CHECK(error_line(head + "reduct N 2 := !E(x0,x2)\n") == 4);
  CHECK(error_line(head + "reduct N 2 := !F(x0,x1)\n") == 4);
  CHECK(error_line(head + "reduct N 2 := E(x0)\n") == 4);
  CHECK(error_line("signature\nrel E 2\nrel E 1\n") == 3);
  CHECK(error_line("class nothing-here\n") == 1);
  try {
    parse_file(head + "E 0 7\n");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
}

TEST_CASE("reduct formulas") {
  const auto f = parse_file(
      "signature\nrel E 2\nrel U 1\n"
      "reduct-set pair\n"
      "reduct N 2 := !E(x0,x1) & x0!=x1 & !U(x0) | x0=x1 & U(x1)\n"
      "reduct T 1 := true\n"
      "reduct F 1 := false\n");
  const auto* r = f.find_reduct("pair");
  REQUIRE(r);
  REQUIRE(r->relations().size() == 3);
  CHECK(r->relations()[0].formula.size() == 2);
  CHECK(r->relations()[0].formula[0].size() == 3);
  CHECK(r->relations()[1].formula == Dnf{Conjunction{}});
  CHECK(r->relations()[2].formula.empty());
  const auto text = serialize_reduct("pair", *r);
  const auto again = parse_file(serialize_signature(r->base()) + text);
  CHECK(*again.find_reduct("pair") == *r);
}

TEST_CASE("maps and classes") {
  const auto f = parse_file(
      "signature\nrel < 2\n"
      "structure c size 3\n< 0 1\n< 0 2\n< 1 2\n"
      "structure bad size 2\n< 0 1\n< 1 0\n"
      "forbidden\nbad\n"
      "class my-orders\n"
      "map up on c\n0 -> 1\n1 -> 2\n");
  const auto* m = f.find_map("up");
  REQUIRE(m);
  CHECK(m->map.table() == std::vector<Element>{1, 2, -1});
  const auto c = f.bounded_class();
  REQUIRE(c);
  CHECK(c->label() == "my-orders");
  CHECK(c->forbidden().size() == 1);

  const auto ref = parse_file("class linear-orders\n");
  REQUIRE(ref.bounded_class());
  CHECK(ref.bounded_class()->forbidden() == get_class("linear-orders").cls.forbidden());
}

TEST_CASE("round trip over the corpus") {
  for (const auto& s : corpus_structures()) {
    const auto text = serialize_signature(s.structure.signature()) + serialize_structure(s.name, s.structure);
    CHECK(*parse_file(text).find_structure(s.name) == s.structure);
  }
  for (const auto& name : corpus_names()) {
    const auto& e = get_class(name);
    const auto f = parse_file(serialize_entry(e));
    REQUIRE(f.signature);
    CHECK(*f.signature == e.cls.signature());
    const auto c = f.bounded_class();
    REQUIRE(c);
    CHECK(c->forbidden() == e.cls.forbidden());
    CHECK(c->label() == e.cls.label());
    for (const auto& s : e.structures) CHECK(*f.find_structure(s.name) == s.structure);
    for (const auto& r : e.reducts) CHECK(*f.find_reduct(r.name) == r.reduct);
    for (const auto& m : e.maps) CHECK(f.find_map(m.name)->map == m.make(m.default_size));
    CHECK(serialize_entry(e) == serialize_entry(e));
  }
}

}
