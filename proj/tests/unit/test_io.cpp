#include <doctest.h>

#include "generators.hpp"
#include "supergeom/document.hpp"
#include "supergeom/io.hpp"

using namespace supergeom;

namespace {

void check_parse_error(auto&& f, int line, int column) {
  try {
    f();
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("element literals") {
  const auto c1 = GrassmannElement::generator(2, 1);
  const auto c2 = GrassmannElement::generator(2, 2);
  const auto a = GrassmannElement::scalar(2, 3) - 2 * c1 + 5 * (c1 * c2);
  CHECK(to_literal(a) == "3 - 2*c1 + 5*c1^c2");
  CHECK(parse_element("3 - 2*c1 + 5*c1^c2", 2) == a);
  CHECK(parse_element("5*c1*c2 + 3 - c1*2", 2) == a);
  CHECK(parse_element("-(c2^c1) * 5 + 3 - 2 * c1", 2) == a);
  CHECK(to_literal(GrassmannElement::zero(2)) == "0");
  CHECK(to_literal(-c2) == "-c2");
  CHECK(parse_element("c1^c1", 2).is_zero());
  CHECK(parse_element("1e-3", 0) == GrassmannElement::scalar(0, 1e-3));
}

TEST_CASE("element parse errors carry positions") {
  check_parse_error([] { parse_element("1 + c3", 2); }, 1, 5);
  check_parse_error([] { parse_element("1 + * c1", 2); }, 1, 5);
  check_parse_error([] { parse_element("(1 + c1", 2); }, 1, 8);
  check_parse_error([] { parse_element("1 $ 2", 2); }, 1, 3);
}

TEST_CASE("element literals round trip exactly") {
  gen::Random rng(71);
  for (int t = 0; t < 300; ++t) {
    const int rank = rng.integer(0, 8);
    const auto a = rng.element(rank, std::pow(10.0, rng.integer(-8, 8)), -1, 0.3);
    CHECK(parse_element(to_literal(a), rank) == a);
  }
}

TEST_CASE("supervector literals") {
  gen::Random rng(72);
  const auto q = rng.even_vector({2, 1}, 3);
  const std::string text = to_literal(q);
  CHECK(text.find(": B(2|1) even") != std::string::npos);
  CHECK(parse_supervector(text, 3) == q);
  const SuperVector full({1, 1}, {GrassmannElement::generator(2, 1), GrassmannElement::scalar(2, 1)});
  CHECK(to_literal(full) == "[c1, 1] : B(1|1) full");
  CHECK(parse_supervector(to_literal(full), 2) == full);
  CHECK_THROWS_AS(parse_supervector("[c1, 1] : B(1|1) even", 2), Error);
}

TEST_CASE("matrix literals") {
  gen::Random rng(73);
  for (int t = 0; t < 50; ++t) {
    const Dims dims{rng.integer(0, 2), rng.integer(0, 2)};
    const int rank = rng.integer(0, 4);
    const auto l = rng.matrix(dims, rank);
    CHECK(parse_supermatrix(to_literal(l)) == l);
  }
  const auto id = SuperMatrix::identity({1, 1}, 2);
  CHECK(to_literal(id) == "dims=(1|1) rank=2\n[1, 0]\n[0, 1]\n");
  CHECK(parse_supermatrix("[1, 0]\n[0, 1]\n", Dims{1, 1}, 2) == id);
  CHECK_THROWS_AS(parse_supermatrix("[1, 0]\n[0, 1]\n"), Error);
  CHECK_THROWS_AS(parse_supermatrix(to_literal(id), Dims{2, 0}, 2), Error);
  check_parse_error([] { parse_supermatrix("dims=(1|1) rank=2\n[1, 0]\n[0, c3]\n"); }, 3, 5);
}

TEST_CASE("superfunction literals") {
  const auto f = parse_superfunction("dims=(1,2) rank=2 Nprime=0\n(3 + c1^c2)*z1^2*y2 + z1*y1 - 2");
  CHECK(f.dims() == Dims{1, 2});
  CHECK(f.rank() == 2);
  CHECK(parse_superfunction(to_literal(f)) == f);
  const auto y1 = SuperFunction::odd_coordinate({1, 2}, 2, 1);
  const auto y2 = SuperFunction::odd_coordinate({1, 2}, 2, 2);
  CHECK(parse_superfunction("y2*y1", Dims{1, 2}, 2) == -(y1 * y2));
  gen::Random rng(74);
  for (int t = 0; t < 60; ++t) {
    const Dims dims{rng.integer(0, 2), rng.integer(0, 2)};
    const int rank = rng.integer(0, 4);
    const auto g = rng.superfunction(dims, rank, 0, rng.integer(0, 1), rng.coin(), 3);
    CHECK(parse_superfunction(to_literal(g)) == g);
  }
  check_parse_error([] { parse_superfunction("dims=(1,1) rank=2\nz1 + y2"); }, 2, 6);
}

TEST_CASE("cocycle documents") {
  const std::string text = R"({
  "rank": 2,
  "dims": [1, 2],
  "charts": ["U", "V"],
  "overlaps": [{"from": "U", "to": "V", "matrix": [["-1", "0", "0"], ["0", "2", "0"], ["0", "0", "0.5"]]}],
  "section": {"U": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
              "V": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
})";
  const CocycleDocument doc = parse_cocycle_document(text);
  CHECK(doc.rank == 2);
  CHECK(doc.dims == Dims{1, 2});
  CHECK(doc.nerve.overlaps().size() == 1);
  CHECK(doc.section.has_value());
  CHECK_FALSE(doc.frames.has_value());
  CHECK(parse_cocycle_document(to_json(doc)) == doc);
  check_parse_error([] { parse_cocycle_document("{\n  \"rank\": 2,\n  \"dims\": [1, 2\n}"); }, 4, 1);
  check_parse_error(
      [] {
        parse_cocycle_document(
            "{\"rank\": 1, \"dims\": [1, 0], \"charts\": [\"U\"],\n \"section\": {\"U\": [[\"1 + c2\"]]}}");
      },
      2, 26);
}
