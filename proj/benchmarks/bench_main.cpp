#include <benchmark/benchmark.h>

#include <random>

#include "supergeom/orthosymplectic.hpp"
#include "supergeom/superfunction.hpp"
#include "supergeom/supermatrix.hpp"

using namespace supergeom;

namespace {

GrassmannElement random_element(std::mt19937_64& rng, int rank, int parity = -1) {
  std::uniform_real_distribution<double> coeff(-1, 1);
  std::vector<std::pair<MultiIndex, double>> terms;
  for (Mask m = 0; m < (Mask{1} << rank); ++m)
    if (parity < 0 || mask_parity(m) == parity) terms.emplace_back(MultiIndex(m), coeff(rng));
  return GrassmannElement::from_terms(rank, terms);
}

SuperMatrix random_even_matrix(std::mt19937_64& rng, Dims dims, int rank, double norm) {
  std::vector<GrassmannElement> entries;
  for (int r = 0; r < dims.total(); ++r)
    for (int c = 0; c < dims.total(); ++c)
      entries.push_back(random_element(rng, rank, dims.slot_parity(r) ^ dims.slot_parity(c)));
  SuperMatrix l(dims, rank, entries);
  return (norm / l.norm()) * l;
}

}  // namespace

static void BM_GrassmannProduct(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const auto a = random_element(rng, rank);
  const auto b = random_element(rng, rank);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GrassmannProduct)->DenseRange(2, 12, 2);

static void BM_GrassmannInverse(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const auto a = random_element(rng, rank) + GrassmannElement::scalar(rank, 3);
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_GrassmannInverse)->DenseRange(2, 10, 2);

static void BM_MatrixExp(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const auto j = random_even_matrix(rng, {2, 2}, rank, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(exp(j));
}
BENCHMARK(BM_MatrixExp)->DenseRange(0, 6, 2);

static void BM_MatrixInvert(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  const auto l = SuperMatrix::identity({2, 2}, rank) + random_even_matrix(rng, {2, 2}, rank, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(invert(l));
}
BENCHMARK(BM_MatrixInvert)->DenseRange(0, 6, 2);

static void BM_CartanFactor(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  const CartanSplit split(1, 1, rank);
  const auto f = split.project_f(random_even_matrix(rng, {1, 2}, rank, 0.2));
  const auto h = split.project_h(random_even_matrix(rng, {1, 2}, rank, 0.2));
  const auto g = exp(f) * exp(h);
  for (auto _ : state) benchmark::DoNotOptimize(cartan_factor(g));
}
BENCHMARK(BM_CartanFactor)->DenseRange(0, 4, 2);

static void BM_Prolongation(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  std::mt19937_64 rng(6);
  CoefficientPolynomial p(2, rank);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) p.add_term({i, j}, random_element(rng, rank));
  const SuperVector x({2, 0}, {GrassmannElement::scalar(rank, 0.7) + random_element(rng, rank, 0).soul(),
                               GrassmannElement::scalar(rank, -1.2) + random_element(rng, rank, 0).soul()},
                      Flavor::Even);
  for (auto _ : state) benchmark::DoNotOptimize(prolong_even(p, x));
}
BENCHMARK(BM_Prolongation)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
