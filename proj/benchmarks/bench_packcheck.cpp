#include <benchmark/benchmark.h>

#include <vector>

#include "ampack/bar_relaxation.hpp"
#include "ampack/dff.hpp"
#include "ampack/lower_bound.hpp"
#include "ampack/orthogonal_packing.hpp"
#include "ampack/packcheck.hpp"
#include "ampack/placement_points.hpp"
#include "ampack/rng.hpp"

namespace {

using namespace ampack;

Machine bench_machine() {
  Machine m;
  m.id = 0;
  m.width = 40;
  m.length = 40;
  m.height = 25;
  m.setup_time = 1.5;
  m.scan_time = 0.005;
  m.recoat_time = 0.2;
  return m;
}

std::vector<Part> bench_parts(int count, int max_dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Part> parts;
  for (int i = 0; i < count; ++i) {
    Part part;
    part.id = i;
    part.width = rng.uniform_int(2, max_dim);
    part.length = rng.uniform_int(2, max_dim);
    part.height = rng.uniform_int(1, 20);
    part.volume = 0.5 * static_cast<double>(part.box_volume());
    parts.push_back(part);
  }
  return parts;
}

void SquareCutLowerBound(benchmark::State& state) {
  const Machine machine = bench_machine();
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 16, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(square_cut_lower_bound(parts, machine));
  }
}
BENCHMARK(SquareCutLowerBound)->Arg(8)->Arg(16)->Arg(32);

void DffInfeasibilityCheck(benchmark::State& state) {
  const Machine machine = bench_machine();
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 16, 11);
  const auto suite = default_dff_suite();
  const auto combos = all_ordered_pairs(suite.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dff_proves_infeasible(parts, machine, suite, combos));
  }
}
BENCHMARK(DffInfeasibilityCheck)->Arg(6)->Arg(10)->Arg(14);

void BarRelaxation(benchmark::State& state) {
  const Machine machine = bench_machine();
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 16, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bar_relaxation_bound(parts, machine));
  }
}
BENCHMARK(BarRelaxation)->Arg(4)->Arg(8)->Arg(12);

void NormalPatterns(benchmark::State& state) {
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 16, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adjusted_normal_patterns(parts, 40));
  }
}
BENCHMARK(NormalPatterns)->Arg(8)->Arg(16)->Arg(32);

void MinimalMimSets(benchmark::State& state) {
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 16, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adjusted_minimal_mim_sets(parts, 40));
  }
}
BENCHMARK(MinimalMimSets)->Arg(4)->Arg(8)->Arg(16);

void ExactPack(benchmark::State& state) {
  const Machine machine = bench_machine();
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 14, 19);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_orthogonal_pack(parts, machine));
  }
}
BENCHMARK(ExactPack)->Arg(4)->Arg(6)->Arg(8);

void FullBatchCheck(benchmark::State& state) {
  const Machine machine = bench_machine();
  const auto parts =
      bench_parts(static_cast<int>(state.range(0)), 14, 23);
  const BatchChecker checker;
  for (auto _ : state) {
    benchmark::DoNotOptimize(checker.check(parts, machine));
  }
}
BENCHMARK(FullBatchCheck)->Arg(4)->Arg(8);

}  // namespace
