#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "supergeom/error.hpp"
#include "supergeom/superfunction.hpp"

using namespace supergeom;

namespace {

GrassmannElement c(int rank, int i) { return GrassmannElement::generator(rank, i); }
GrassmannElement s(int rank, double v) { return GrassmannElement::scalar(rank, v); }

}  // namespace

TEST_CASE("prolongation of z^2") {
  const int n = 2;
  const auto z = CoefficientPolynomial::variable(1, n, 1);
  const SuperVector x({1, 0}, {s(n, 1) + c(n, 1) * c(n, 2)}, Flavor::Even);
  CHECK(prolong_even(z * z, x) == s(n, 1) + 2 * (c(n, 1) * c(n, 2)));
}

TEST_CASE("prolongation matches substitution") {
  gen::Random rng(41);
  for (int t = 0; t < 60; ++t) {
    const int vars = rng.integer(1, 3);
    const int rank = rng.integer(0, 5);
    const auto f = rng.polynomial(vars, rank, 5, 4);
    const auto x = rng.even_vector({vars, 0}, rank);
    CHECK(max_deviation(prolong_even(f, x), oracle::substitute(f, x.components())) < 1e-12);
  }
}

TEST_CASE("evaluation by hand") {
  const int n = 2;
  const Dims dims{1, 1};
  const auto x = SuperFunction::even_coordinate(dims, n, 1);
  const auto y = SuperFunction::odd_coordinate(dims, n, 1);
  const SuperVector q(dims, {s(n, 2) + c(n, 1) * c(n, 2), c(n, 1)}, Flavor::Even);
  CHECK(evaluate(x * y, q) == 2 * c(n, 1));
  CHECK(evaluate(y * x, q) == 2 * c(n, 1));
  CHECK(evaluate(x, q) == q[0]);
  CHECK(evaluate(SuperFunction::constant(dims, c(n, 2)), q) == c(n, 2));
  const SuperVector full(dims, {c(n, 1), c(n, 1)});
  CHECK_THROWS_AS(evaluate(x, full), Error);
}

TEST_CASE("products evaluate pointwise") {
  gen::Random rng(42);
  for (int t = 0; t < 60; ++t) {
    const Dims dims{rng.integer(1, 2), rng.integer(0, 2)};
    const int rank = rng.integer(dims.odd, 5);
    const auto f = rng.superfunction(dims, rank, 0, rng.integer(0, 1), rng.coin());
    const auto g = rng.superfunction(dims, rank, 0, rng.integer(0, 1), rng.coin());
    const auto q = rng.even_vector(dims, rank);
    CHECK(max_deviation(evaluate(fn_mul(f, g), q), evaluate(f, q) * evaluate(g, q)) < 1e-11);
    CHECK(max_deviation(evaluate(fn_add(f, g), q), evaluate(f, q) + evaluate(g, q)) < 1e-12);
  }
}

TEST_CASE("odd coordinates anticommute") {
  const Dims dims{0, 2};
  const auto y1 = SuperFunction::odd_coordinate(dims, 3, 1);
  const auto y2 = SuperFunction::odd_coordinate(dims, 3, 2);
  CHECK(y1 * y2 == -(y2 * y1));
  CHECK((y1 * y1).is_zero());
  CHECK((y1 * y2).parity() == 0);
  CHECK(y1.parity() == 1);
}

TEST_CASE("odd derivative by hand") {
  const Dims dims{0, 2};
  const auto y1 = SuperFunction::odd_coordinate(dims, 2, 1);
  const auto y2 = SuperFunction::odd_coordinate(dims, 2, 2);
  CHECK(odd_derivative(y1 * y2, 2) == -y1);
  CHECK(odd_derivative(y1 * y2, 1) == y2);
  CHECK_THROWS_AS(odd_derivative(y1, 3), Error);
  const SuperFunction tight(dims, 2, 1);
  try {
    odd_derivative(tight, 1);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LambdaNotIso);
  }
}

TEST_CASE("even derivative") {
  const Dims dims{2, 1};
  const int n = 2;
  const auto x1 = SuperFunction::even_coordinate(dims, n, 1);
  const auto x2 = SuperFunction::even_coordinate(dims, n, 2);
  const auto y = SuperFunction::odd_coordinate(dims, n, 1);
  CHECK(even_derivative(x1 * x1 * x2 * y, 1) == 2.0 * (x1 * x2 * y));
  CHECK(even_derivative(y, 1).is_zero());
  CHECK_THROWS_AS(even_derivative(y, 3), Error);
}

TEST_CASE("jacobian of a simple map") {
  const Dims dims{1, 1};
  const int n = 2;
  const auto x = SuperFunction::even_coordinate(dims, n, 1);
  const auto y = SuperFunction::odd_coordinate(dims, n, 1);
  const std::vector<SuperFunction> map{x * x, x * y};
  const SuperVector q(dims, {s(n, 3), c(n, 1)}, Flavor::Even);
  const SuperMatrix j = jacobian_at(map, q);
  CHECK(j(0, 0) == s(n, 6));
  CHECK(j(0, 1).is_zero());
  CHECK(j(1, 0) == c(n, 1));
  CHECK(j(1, 1) == s(n, 3));
  CHECK(parity_of(j) == MatrixParity::Even);
  const std::vector<SuperFunction> ids{x, y};
  CHECK(jacobian_at(ids, q) == SuperMatrix::identity(dims, n));
  const SuperVector image = evaluate_map(map, q);
  CHECK(image[0] == s(n, 9));
  CHECK(image[1] == 3 * c(n, 1));
  const std::vector<SuperFunction> wrong{y, x};
  CHECK_THROWS_AS(jacobian(wrong), Error);
}

TEST_CASE("literal lambda condition") {
  CHECK(check_lambda_condition(4, 1, 3));
  CHECK_FALSE(check_lambda_condition(4, 2, 3));
  CHECK(check_lambda_condition(0, 0, 0));
}
