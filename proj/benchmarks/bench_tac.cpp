#include <benchmark/benchmark.h>

#include <random>

#include "tac/cech_cohomology.hpp"
#include "tac/model_library.hpp"
#include "tac/pairing_intersection.hpp"
#include "tac/punctured.hpp"

using namespace tac;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  Matrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = dist(rng);
  return A;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 rng(1);
  Matrix A = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(12)->Arg(24);

void BM_ElementaryDivisorsSparse(benchmark::State& state) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> pick(0, 9);
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int r = pick(rng);
      A(i, j) = r < 8 ? 0 : (r == 8 ? 1 : -1);
    }
  for (auto _ : state) benchmark::DoNotOptimize(elementary_divisors(A));
}
BENCHMARK(BM_ElementaryDivisorsSparse)->Arg(50)->Arg(200);

void BM_GoggleHomology(benchmark::State& state) {
  AffineModel m = build_goggles(GogglesVariant::SharedLine);
  for (auto _ : state) benchmark::DoNotOptimize(homology(chain_complex(pushforward_sheaf(m.system, 1, SheafKind::Closed))));
}
BENCHMARK(BM_GoggleHomology);

void BM_CubeHomology(benchmark::State& state) {
  AffineModel m = build_cube_k3();
  for (auto _ : state) benchmark::DoNotOptimize(homology(chain_complex(pushforward_sheaf(m.system, 1, SheafKind::Closed))));
}
BENCHMARK(BM_CubeHomology)->Unit(benchmark::kMillisecond);

void BM_CubeCohomology(benchmark::State& state) {
  AffineModel m = build_cube_k3();
  for (auto _ : state)
    benchmark::DoNotOptimize(homology(vertex_star_cech(pushforward_sheaf(dual_system(m.system), 1, SheafKind::Open, true))));
}
BENCHMARK(BM_CubeCohomology)->Unit(benchmark::kMillisecond);

void BM_CubePairing(benchmark::State& state) {
  AffineModel m = build_cube_k3();
  for (auto _ : state) benchmark::DoNotOptimize(pairing_matrix(m.system, 1, 1));
}
BENCHMARK(BM_CubePairing)->Unit(benchmark::kMillisecond);

void BM_CubeIntersectionGram(benchmark::State& state) {
  AffineModel m = build_cube_k3();
  IntersectionPairing I(m.system, 1, 1, m.orientation);
  for (auto _ : state) benchmark::DoNotOptimize(I.gram(m.cycles, m.cycles));
}
BENCHMARK(BM_CubeIntersectionGram)->Unit(benchmark::kMillisecond);

void BM_PuncturedCech(benchmark::State& state) {
  const auto a = static_cast<std::size_t>(state.range(0)), b = static_cast<std::size_t>(state.range(1));
  LatticeSimplex T = LatticePolytope::standard_simplex(a), C = LatticePolytope::standard_simplex(b);
  for (auto _ : state) benchmark::DoNotOptimize(punctured_cech_S(T, C));
}
BENCHMARK(BM_PuncturedCech)->Args({1, 1})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_DualityFourFold(benchmark::State& state) {
  AffineModel m = build_named_model("symple:simplex3xsimplex1");
  for (auto _ : state) benchmark::DoNotOptimize(verify_pl_duality(m.system, 2));
}
BENCHMARK(BM_DualityFourFold)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
