#include <benchmark/benchmark.h>

#include "ampack/generator.hpp"
#include "ampack/heuristics.hpp"
#include "ampack/solver.hpp"

namespace {

using namespace ampack;

Instance bench_instance(int parts, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.part_class = 3;
  spec.part_count = parts;
  spec.machine_count = 2;
  spec.seed = seed;
  return generate_instance(spec);
}

void StartSolution(benchmark::State& state) {
  const Instance instance =
      bench_instance(static_cast<int>(state.range(0)), 5);
  const MachineExclusions exclusions = MachineExclusions::compute(instance);
  const auto strategies = default_strategies(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        start_solution(instance, exclusions, strategies, 5));
  }
}
BENCHMARK(StartSolution)->Arg(10)->Arg(20)->Arg(40);

void Preprocessing(benchmark::State& state) {
  const Instance instance =
      bench_instance(static_cast<int>(state.range(0)), 9);
  for (auto _ : state) {
    const MachineExclusions exclusions = MachineExclusions::compute(instance);
    benchmark::DoNotOptimize(
        IncompatiblePairs::compute(instance, exclusions));
    benchmark::DoNotOptimize(reduce_batch_count(instance));
  }
}
BENCHMARK(Preprocessing)->Arg(10)->Arg(20)->Arg(40);

void SolveSmall(benchmark::State& state) {
  const Instance instance =
      bench_instance(static_cast<int>(state.range(0)), 13);
  SolverConfig config;
  config.time_limit_s = 30.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(instance, config));
  }
}
BENCHMARK(SolveSmall)->Unit(benchmark::kMillisecond)->Arg(6)->Arg(8);

}  // namespace
