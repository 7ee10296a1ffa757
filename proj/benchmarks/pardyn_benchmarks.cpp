#include "pardyn/cp_algebra.hpp"
#include "pardyn/dynamics.hpp"
#include "pardyn/generators.hpp"
#include "pardyn/measures.hpp"
#include "pardyn/orbit_breaking.hpp"

#include <benchmark/benchmark.h>

using namespace pardyn;

static void BM_Domains(benchmark::State& state) {
  const auto sys = make_random(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_domains(sys, 12));
  }
}
BENCHMARK(BM_Domains)->Arg(12)->Arg(64)->Arg(256);

static void BM_InvariantPolytope(benchmark::State& state) {
  const auto sys = make_random(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(invariant_measure_polytope(sys));
  }
}
BENCHMARK(BM_InvariantPolytope)->Arg(8)->Arg(32)->Arg(128);

static void BM_ConformalPolytope(benchmark::State& state) {
  const auto sys = disjoint_union({make_chain(static_cast<std::size_t>(state.range(0))),
                                   make_chain(3), make_cycle(4)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(conformal_measure_polytope(sys, 2));
  }
}
BENCHMARK(BM_ConformalPolytope)->Arg(4)->Arg(16)->Arg(64);

static void BM_BuildCpChain(benchmark::State& state) {
  const auto sys = make_chain(static_cast<std::size_t>(state.range(0)));
  const auto rank = RankFunction::constant(sys, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cp_algebra(sys, rank));
  }
}
// Default options run the build-time model checks on blocks of size <= 64.
BENCHMARK(BM_BuildCpChain)->Arg(3)->Arg(5)->Arg(7);

static void BM_BuildCpChainUnchecked(benchmark::State& state) {
  const auto sys = make_chain(static_cast<std::size_t>(state.range(0)));
  const auto rank = RankFunction::constant(sys, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cp_algebra(sys, rank, {4096, 0, 0}));
  }
}
BENCHMARK(BM_BuildCpChainUnchecked)->Arg(5)->Arg(7)->Arg(12);

static void BM_BreakRotation(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto sys = make_rotation(q, 1);
  const auto y = make_point_set(q, {0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_break_traces(sys, y, RankFunction::constant(sys, 1)));
  }
}
BENCHMARK(BM_BreakRotation)->Arg(5)->Arg(101);

static void BM_VerifyBlurbsPermutations(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_blurbs({n}, EnumerationMode::Permutations));
  }
}
BENCHMARK(BM_VerifyBlurbsPermutations)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
