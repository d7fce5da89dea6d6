#include "ampack/model.hpp"

#include <algorithm>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace ampack;

namespace {

Machine simple_machine(int id = 0, int w = 50, int l = 50, int h = 50) {
  Machine m;
  m.id = id;
  m.width = w;
  m.length = l;
  m.height = h;
  m.setup_time = 1.0;
  m.scan_time = 0.030864;
  m.recoat_time = 0.25;
  return m;
}

Part simple_part(int id, int w, int l, int h, double volume) {
  return Part{id, w, l, h, volume};
}

Batch batch_of(int machine_id, int index, std::vector<Placement> placements) {
  Batch b;
  b.machine_id = machine_id;
  b.index = index;
  b.placements = std::move(placements);
  return b;
}

}  // namespace

TEST_CASE("part_fits_machine respects rotation and height") {
  Machine tall = simple_machine(0, 25, 25, 32);
  CHECK(part_fits_machine(simple_part(0, 6, 2, 28, 10.0), tall));

  Machine narrow = simple_machine(0, 20, 40, 10);
  CHECK(part_fits_machine(simple_part(0, 30, 10, 5, 1.0), narrow));

  Machine low = simple_machine(0, 50, 50, 32);
  CHECK_FALSE(part_fits_machine(simple_part(0, 5, 5, 33, 1.0), low));

  // Exact fit counts as fitting.
  Machine type1 = simple_machine(0, 40, 40, 25);
  CHECK(part_fits_machine(simple_part(0, 40, 40, 10, 1.0), type1));
}

TEST_CASE("completion times follow the setup + scan + recoat recurrence") {
  Instance instance;
  instance.machines.push_back(simple_machine());
  instance.parts.push_back(simple_part(0, 10, 10, 10, 100.0));
  instance.parts.push_back(simple_part(1, 10, 10, 10, 100.0));

  const Batch first =
      batch_of(0, 1, {Placement{0, 0, 10, 0, 10, false}});
  const Batch second =
      batch_of(0, 2, {Placement{1, 0, 10, 0, 10, false}});

  SUBCASE("single batch") {
    const std::vector<Batch> batches = {first};
    const auto times = completion_times(instance, instance.machines[0], batches);
    REQUIRE(times.size() == 1);
    CHECK(times[0] == doctest::Approx(6.5864).epsilon(1e-12));
  }

  SUBCASE("two identical batches double the completion") {
    const std::vector<Batch> batches = {first, second};
    const auto times = completion_times(instance, instance.machines[0], batches);
    REQUIRE(times.size() == 2);
    CHECK(times[1] == doctest::Approx(13.1728).epsilon(1e-12));
  }

  SUBCASE("zero volume and zero recoat leaves only the setup") {
    Instance tiny;
    Machine machine = simple_machine();
    machine.recoat_time = 0.0;
    tiny.machines.push_back(machine);
    tiny.parts.push_back(simple_part(0, 1, 1, 1, 0.0));
    const std::vector<Batch> batches = {
        batch_of(0, 1, {Placement{0, 0, 1, 0, 1, false}})};
    const auto times = completion_times(tiny, tiny.machines[0], batches);
    CHECK(times[0] == doctest::Approx(machine.setup_time));
  }

  SUBCASE("empty batch is an error") {
    const std::vector<Batch> batches = {batch_of(0, 1, {})};
    CHECK_THROWS_AS(
        completion_times(instance, instance.machines[0], batches),
        std::invalid_argument);
  }
}

TEST_CASE("makespan is the maximum completion time") {
  Solution solution;
  solution.machines.resize(2);
  solution.machines[0].completion_times = {6.5864};
  solution.machines[1].completion_times = {8.2};
  CHECK(makespan(solution) == doctest::Approx(8.2));

  Solution empty;
  CHECK(makespan(empty) == 0.0);
}

namespace {

Instance one_part_instance() {
  Instance instance;
  instance.machines.push_back(simple_machine());
  instance.parts.push_back(simple_part(0, 5, 5, 5, 10.0));
  return instance;
}

Solution one_part_solution(const Instance& instance) {
  Solution solution;
  solution.machines.resize(1);
  solution.machines[0].machine_id = 0;
  solution.machines[0].batches.push_back(
      batch_of(0, 1, {Placement{0, 0, 5, 0, 5, false}}));
  solution.machines[0].completion_times = completion_times(
      instance, instance.machines[0], solution.machines[0].batches);
  solution.makespan = makespan(solution);
  return solution;
}

}  // namespace

TEST_CASE("validate_solution flags the model constraint violations") {
  const Instance instance = one_part_instance();

  SUBCASE("a correct single-part solution is clean") {
    CHECK(validate_solution(instance, one_part_solution(instance)).ok());
  }

  SUBCASE("overlapping placements are reported") {
    Instance two = instance;
    two.parts.push_back(simple_part(1, 5, 5, 5, 10.0));
    Solution solution;
    solution.machines.resize(1);
    solution.machines[0].machine_id = 0;
    solution.machines[0].batches.push_back(
        batch_of(0, 1,
                 {Placement{0, 0, 5, 0, 5, false},
                  Placement{1, 0, 5, 0, 5, false}}));
    solution.machines[0].completion_times = completion_times(
        two, two.machines[0], solution.machines[0].batches);
    solution.makespan = makespan(solution);
    const auto report = validate_solution(two, solution);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                        return v.kind == Violation::Kind::Overlap;
                      }));
  }

  SUBCASE("a part assigned twice is a partition violation") {
    Solution solution = one_part_solution(instance);
    solution.machines[0].batches.push_back(
        batch_of(0, 2, {Placement{0, 0, 5, 0, 5, false}}));
    solution.machines[0].completion_times = completion_times(
        instance, instance.machines[0], solution.machines[0].batches);
    solution.makespan = makespan(solution);
    const auto report = validate_solution(instance, solution);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                        return v.kind == Violation::Kind::PartitionDuplicate;
                      }));
  }

  SUBCASE("a missing part is a partition violation") {
    Solution solution = one_part_solution(instance);
    Instance extended = instance;
    extended.parts.push_back(simple_part(7, 2, 2, 2, 1.0));
    const auto report = validate_solution(extended, solution);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                        return v.kind == Violation::Kind::PartitionMissing;
                      }));
  }

  SUBCASE("batch indices must be contiguous from one") {
    Solution solution = one_part_solution(instance);
    solution.machines[0].batches[0].index = 2;
    const auto report = validate_solution(instance, solution);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                        return v.kind == Violation::Kind::BatchIndexGap;
                      }));
  }

  SUBCASE("an unknown part id is a violation, not a crash") {
    Solution solution = one_part_solution(instance);
    solution.machines[0].batches[0].placements[0].part_id = 999;
    const auto report = validate_solution(instance, solution);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                        return v.kind == Violation::Kind::UnknownPart;
                      }));
  }

  SUBCASE("wrong completion times are reported") {
    Solution solution = one_part_solution(instance);
    solution.machines[0].completion_times[0] += 0.5;
    solution.makespan += 0.5;
    const auto report = validate_solution(instance, solution);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(),
                      [](const Violation& v) {
                        return v.kind ==
                               Violation::Kind::CompletionTimeMismatch;
                      }));
  }
}

TEST_CASE("completion times strictly increase when setup time is positive") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Instance instance;
    Machine machine = simple_machine();
    machine.setup_time = rng.uniform_real(0.1, 2.0);
    instance.machines.push_back(machine);
    const int batches = rng.uniform_int(1, 5);
    std::vector<Batch> sequence;
    for (int b = 0; b < batches; ++b) {
      const int id = b;
      instance.parts.push_back(
          ampack::test::random_part(rng, id, 10));
      sequence.push_back(batch_of(0, b + 1,
                                  {Placement{id, 0, instance.parts[id].width,
                                             0, instance.parts[id].length,
                                             false}}));
    }
    const auto times = completion_times(instance, machine, sequence);
    for (std::size_t b = 1; b < times.size(); ++b) {
      CHECK(times[b] > times[b - 1]);
    }
  }
}

TEST_CASE("makespan ignores the machine enumeration order") {
  Solution solution;
  solution.machines.resize(3);
  solution.machines[0].completion_times = {4.0, 9.5};
  solution.machines[1].completion_times = {12.25};
  solution.machines[2].completion_times = {};
  const double before = makespan(solution);
  std::swap(solution.machines[0], solution.machines[2]);
  std::swap(solution.machines[1], solution.machines[2]);
  CHECK(makespan(solution) == before);
}

TEST_CASE("per-machine total time is independent of batch order") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Instance instance;
    instance.machines.push_back(simple_machine());
    const int count = rng.uniform_int(2, 6);
    std::vector<Batch> sequence;
    for (int b = 0; b < count; ++b) {
      instance.parts.push_back(ampack::test::random_part(rng, b, 10));
      sequence.push_back(batch_of(0, b + 1,
                                  {Placement{b, 0, instance.parts[b].width, 0,
                                             instance.parts[b].length,
                                             false}}));
    }
    const auto forward =
        completion_times(instance, instance.machines[0], sequence);
    std::reverse(sequence.begin(), sequence.end());
    for (int b = 0; b < count; ++b) sequence[b].index = b + 1;
    const auto backward =
        completion_times(instance, instance.machines[0], sequence);
    CHECK(forward.back() == doctest::Approx(backward.back()).epsilon(1e-12));
  }
}
