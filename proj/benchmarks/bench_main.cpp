#include <benchmark/benchmark.h>

#include "dsfem/analysis.hpp"
#include "dsfem/galerkin.hpp"
#include "dsfem/hybrid.hpp"
#include "dsfem/mixed.hpp"
#include "dsfem/serendipity.hpp"

using namespace dsfem;

namespace {

const Quad kQuad({Point2{0, 0}, {1.1, 0.1}, {1.3, 0.9}, {0.2, 1.2}});

void BM_DSElement(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DSElement(kQuad, r, SupplementChoice::geometric()));
}
BENCHMARK(BM_DSElement)->DenseRange(2, 5);

void BM_MixedElement(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MixedElement(kQuad, r, MixedVariant::Full, SupplementChoice::geometric()));
  }
}
BENCHMARK(BM_MixedElement)->DenseRange(1, 3);

void BM_GalerkinAssembly(benchmark::State& state) {
  const Mesh mesh = generate_mesh(MeshFamily::Perturbed, static_cast<int>(state.range(0)));
  const auto exact = sine_solution();
  for (auto _ : state) benchmark::DoNotOptimize(assemble_galerkin(mesh, 3, SupplementChoice::geometric(), {exact.f}));
}
BENCHMARK(BM_GalerkinAssembly)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_HybridAssembly(benchmark::State& state) {
  const Mesh mesh = generate_mesh(MeshFamily::Perturbed, static_cast<int>(state.range(0)));
  const auto exact = sine_solution();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assemble_hybrid_mixed(mesh, 2, MixedVariant::Reduced, SupplementChoice::geometric(), {exact.f}));
  }
}
BENCHMARK(BM_HybridAssembly)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const auto exact = sine_solution();
  const auto sys = assemble_galerkin(generate_mesh(MeshFamily::Perturbed, 16), 3, SupplementChoice::geometric(), {exact.f});
  const auto kind = state.range(0) == 0 ? SolverKind::Cholesky : SolverKind::Pcg;
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(sys.matrix, sys.rhs, kind));
}
BENCHMARK(BM_Solve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
