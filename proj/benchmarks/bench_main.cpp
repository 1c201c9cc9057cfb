// Microbenchmarks for the hot paths: dense symmetric eigensolves, operator
// norms (both branches), matching sampling, lift assembly, and the full
// new-eigenvalue extraction pipeline.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "liftspec/graph.hpp"
#include "liftspec/lift.hpp"
#include "liftspec/linalg.hpp"
#include "liftspec/rng.hpp"
#include "liftspec/spectral.hpp"

namespace {

liftspec::SymmetricMatrix random_symmetric(int dim, std::uint64_t seed) {
  liftspec::SplitMix64 rng(seed);
  std::vector<double> entries(static_cast<std::size_t>(dim) * dim);
  for (double& e : entries) e = 2.0 * rng.next_unit() - 1.0;
  return liftspec::SymmetricMatrix(dim, entries);
}

void BM_SymEigenvalues(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const liftspec::SymmetricMatrix m = random_symmetric(dim, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liftspec::sym_eigenvalues(m));
  }
  state.SetComplexityN(dim);
}

void BM_OperatorNorm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const liftspec::SymmetricMatrix m = random_symmetric(dim, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liftspec::operator_norm(m));
  }
  state.SetComplexityN(dim);
}

void BM_PowerOperatorNorm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const liftspec::SymmetricMatrix m = random_symmetric(dim, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        liftspec::detail::power_operator_norm(m, 1e-9, 10LL * dim));
  }
  state.SetComplexityN(dim);
}

void BM_SampleMatching(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        liftspec::sample_matching(k, ++seed, liftspec::Sampler::uniform));
  }
}

void BM_SampleLift(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const liftspec::Graph g = liftspec::complete_graph(20);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        liftspec::sample_lift(g, k, ++seed, liftspec::Sampler::uniform));
  }
}

void BM_LiftAdjacency(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const liftspec::Graph g = liftspec::complete_graph(20);
  const liftspec::LiftSpec spec =
      liftspec::sample_lift(g, k, 7, liftspec::Sampler::uniform);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liftspec::lift_adjacency(spec));
  }
}

void BM_NewAdjacencyEigenvalues(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const liftspec::Graph g = liftspec::cycle_graph(8);
  const liftspec::LiftSpec spec =
      liftspec::sample_lift(g, k, 11, liftspec::Sampler::uniform);
  const liftspec::LiftedGraph lifted = liftspec::realize(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liftspec::new_adjacency_eigenvalues(g, lifted));
  }
}

}  // namespace

BENCHMARK(BM_SymEigenvalues)->RangeMultiplier(2)->Range(16, 1024)->Complexity();
BENCHMARK(BM_OperatorNorm)->RangeMultiplier(2)->Range(16, 1024)->Complexity();
BENCHMARK(BM_PowerOperatorNorm)->RangeMultiplier(4)->Range(64, 1024)->Complexity();
BENCHMARK(BM_SampleMatching)->RangeMultiplier(4)->Range(4, 1024);
BENCHMARK(BM_SampleLift)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_LiftAdjacency)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_NewAdjacencyEigenvalues)->RangeMultiplier(2)->Range(4, 32);

BENCHMARK_MAIN();
