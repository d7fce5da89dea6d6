#include "ampack/solver.hpp"

#include <limits>

#include "ampack/generator.hpp"
#include "ampack/heuristics.hpp"
#include "ampack/model.hpp"
#include "ampack/orthogonal_packing.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace ampack;

namespace {

SolverConfig quick_config(std::uint64_t seed = 1) {
  SolverConfig config;
  config.time_limit_s = 60.0;
  config.seed = seed;
  return config;
}

Instance single_part_instance() {
  Instance instance;
  Machine machine;
  machine.id = 0;
  machine.width = 50;
  machine.length = 50;
  machine.height = 50;
  machine.setup_time = 1.0;
  machine.scan_time = 0.01;
  machine.recoat_time = 0.1;
  instance.machines.push_back(machine);
  instance.parts.push_back({0, 5, 5, 8, 50.0});
  return instance;
}

}  // namespace

TEST_CASE("cut pool keeps an antichain and blocks supersets") {
  CutPool pool;
  pool.insert(0, {3, 1, 2});
  pool.insert(0, {1, 2, 3, 4});  // dominated, must not be stored
  CHECK(pool.cuts_for(0).size() == 1);
  pool.insert(0, {1, 2});  // dominates the first cut
  CHECK(pool.cuts_for(0).size() == 1);
  CHECK(pool.cuts_for(0)[0] == std::vector<int>{1, 2});

  const std::vector<int> batch = {1, 2, 5};
  CHECK_FALSE(pool.allows(0, batch));
  const std::vector<int> other = {1, 5};
  CHECK(pool.allows(0, other));
  CHECK(pool.allows(1, batch));  // cuts are machine-specific
}

TEST_CASE("an instance without parts has makespan zero") {
  Instance instance = single_part_instance();
  instance.parts.clear();
  const SolveResult result = solve(instance, quick_config());
  CHECK(result.status == SolveResult::Status::Optimal);
  CHECK(result.upper == 0.0);
  CHECK(result.lower == 0.0);
}

TEST_CASE("a single part on a single machine solves in closed form") {
  const Instance instance = single_part_instance();
  const SolveResult result = solve(instance, quick_config());
  CHECK(result.status == SolveResult::Status::Optimal);
  CHECK(result.upper == doctest::Approx(1.0 + 0.5 + 0.8).epsilon(1e-12));
  CHECK(result.lower == doctest::Approx(result.upper));
  CHECK(validate_solution(instance, result.incumbent).ok());
}

TEST_CASE("solver matches the exhaustive oracle on random instances") {
  Rng rng(90210);
  ampack::test::GridPackCache cache;
  for (int trial = 0; trial < 12; ++trial) {
    const Instance instance =
        ampack::test::random_small_instance(rng, 6, 2, 8);
    const auto oracle = ampack::test::exhaustive_min_makespan(instance, cache);
    const SolveResult result = solve(instance, quick_config(trial));
    CAPTURE(trial);
    CHECK(result.status == SolveResult::Status::Optimal);
    CHECK(result.upper == doctest::Approx(oracle.makespan).epsilon(1e-9));
    CHECK(validate_solution(instance, result.incumbent).ok());

    const SolveResult two_step =
        solve_two_step(instance, quick_config(trial));
    CHECK(two_step.status == SolveResult::Status::Optimal);
    CHECK(two_step.upper == doctest::Approx(oracle.makespan).epsilon(1e-9));
  }
}

TEST_CASE("every pooled cut re-verifies as unpackable") {
  Rng rng(777);
  for (int trial = 0; trial < 6; ++trial) {
    const Instance instance =
        ampack::test::random_small_instance(rng, 6, 2, 8);
    const MachineExclusions exclusions = MachineExclusions::compute(instance);
    const Solution start = start_solution(
        instance, exclusions, default_strategies(trial), trial);
    CutPool pool;
    const SolveResult result = solve_with_pool(
        instance, quick_config(trial), pool, &start, 1.0, 60.0);
    CHECK(result.status == SolveResult::Status::Optimal);
    for (int machine_id : pool.machine_ids()) {
      const Machine& machine = instance.machine_by_id(machine_id);
      for (const std::vector<int>& cut : pool.cuts_for(machine_id)) {
        std::vector<Part> parts;
        for (int id : cut) parts.push_back(instance.part_by_id(id));
        CHECK(exact_orthogonal_pack(parts, machine).verdict ==
              PackVerdict::Infeasible);
      }
    }
  }
}

TEST_CASE("a pre-seeded pool does not change the optimum") {
  Rng rng(31415);
  for (int trial = 0; trial < 5; ++trial) {
    const Instance instance =
        ampack::test::random_small_instance(rng, 6, 2, 8);
    const MachineExclusions exclusions = MachineExclusions::compute(instance);
    const Solution start = start_solution(
        instance, exclusions, default_strategies(trial), trial);

    CutPool pool;
    const SolveResult first = solve_with_pool(
        instance, quick_config(trial), pool, &start, 1.0, 60.0);
    const SolveResult second = solve_with_pool(
        instance, quick_config(trial), pool, &start, 1.0, 60.0);
    CHECK(first.upper == doctest::Approx(second.upper).epsilon(1e-12));
    CHECK(second.status == SolveResult::Status::Optimal);
  }
}

TEST_CASE("identical runs reproduce bounds and cut counts") {
  Rng rng(6);
  const Instance instance = ampack::test::random_small_instance(rng, 7, 2, 8);
  const SolveResult a = solve(instance, quick_config(9));
  const SolveResult b = solve(instance, quick_config(9));
  CHECK(a.upper == b.upper);
  CHECK(a.lower == b.lower);
  CHECK(a.stats.cuts.lower_bound == b.stats.cuts.lower_bound);
  CHECK(a.stats.cuts.dff == b.stats.cuts.dff);
  CHECK(a.stats.cuts.bar == b.stats.cuts.bar);
  CHECK(a.stats.cuts.exact == b.stats.cuts.exact);
  CHECK(a.stats.batches_checked == b.stats.batches_checked);

  const SolveResult ta = solve_two_step(instance, quick_config(9));
  const SolveResult tb = solve_two_step(instance, quick_config(9));
  CHECK(ta.upper == tb.upper);
  CHECK(ta.stats.batches_checked == tb.stats.batches_checked);
}

TEST_CASE("the incumbent never exceeds the start solution") {
  Rng rng(121);
  for (int trial = 0; trial < 8; ++trial) {
    const Instance instance =
        ampack::test::random_small_instance(rng, 6, 2, 8);
    const MachineExclusions exclusions = MachineExclusions::compute(instance);
    const Solution start = start_solution(
        instance, exclusions, default_strategies(trial), trial);
    const SolveResult result = solve(instance, quick_config(trial));
    CHECK(result.upper <= start.makespan + 1e-9);
    const SolveResult two_step = solve_two_step(instance, quick_config(trial));
    CHECK(two_step.upper <= start.makespan + 1e-9);
  }
}

TEST_CASE("a degenerate two-step area fraction behaves like one phase") {
  const Instance instance = single_part_instance();
  SolverConfig config = quick_config();
  config.two_step_area_fraction = 1.0;
  const SolveResult result = solve_two_step(instance, config);
  CHECK(result.status == SolveResult::Status::Optimal);
  CHECK(result.upper == doctest::Approx(2.3));
}

TEST_CASE("hitting the time limit leaves sound bounds and a valid incumbent") {
  GeneratorSpec spec;
  spec.part_class = 2;  // elongated parts make the packing subproblem hard
  spec.part_count = 20;
  spec.machine_count = 2;
  spec.seed = 3;
  const Instance instance = generate_instance(spec);
  SolverConfig config;
  config.time_limit_s = 1.5;
  const SolveResult result = solve(instance, config);
  CHECK(result.lower <= result.upper + 1e-9);
  CHECK(result.upper < std::numeric_limits<double>::infinity());
  CHECK(validate_solution(instance, result.incumbent).ok());
  if (result.status == SolveResult::Status::Optimal) {
    CHECK(result.gap() <= config.gap_tolerance);
  }
}

TEST_CASE("epsilon measures the free plate area") {
  Machine machine;
  machine.width = 50;
  machine.length = 50;
  const std::vector<Part> parts = {{0, 40, 30, 1, 1.0},
                                   {1, 40, 30, 1, 1.0}};  // area 2400
  CHECK(epsilon_measure(parts, machine) == doctest::Approx(0.04));
  CHECK(epsilon_measure({}, machine) == doctest::Approx(1.0));
  const std::vector<Part> full = {{0, 50, 50, 1, 1.0}};
  CHECK(epsilon_measure(full, machine) == doctest::Approx(0.0));
}
