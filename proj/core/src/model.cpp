#include "ampack/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace ampack {

int batch_height(const Instance& instance, const Batch& batch) {
  int h = 0;
  for (const Placement& p : batch.placements) {
    h = std::max(h, instance.part_by_id(p.part_id).height);
  }
  return h;
}

double batch_volume(const Instance& instance, const Batch& batch) {
  double v = 0.0;
  for (const Placement& p : batch.placements) {
    v += instance.part_by_id(p.part_id).volume;
  }
  return v;
}

long long batch_area(const Instance& instance, const Batch& batch) {
  long long a = 0;
  for (const Placement& p : batch.placements) {
    a += instance.part_by_id(p.part_id).area();
  }
  return a;
}

std::vector<int> batch_part_ids(const Batch& batch) {
  std::vector<int> ids;
  ids.reserve(batch.placements.size());
  for (const Placement& p : batch.placements) ids.push_back(p.part_id);
  return ids;
}

bool part_fits_machine(const Part& part, const Machine& machine) {
  if (part.height > machine.height) return false;
  const bool plain = part.width <= machine.width && part.length <= machine.length;
  const bool turned = part.length <= machine.width && part.width <= machine.length;
  return plain || turned;
}

std::vector<double> completion_times(const Instance& instance,
                                     const Machine& machine,
                                     std::span<const Batch> ordered_batches) {
  std::vector<double> times;
  times.reserve(ordered_batches.size());
  double previous = 0.0;
  for (const Batch& batch : ordered_batches) {
    if (batch.placements.empty()) {
      throw std::invalid_argument("empty batch in schedule of machine " +
                                  std::to_string(machine.id));
    }
    previous += machine.setup_time +
                machine.scan_time * batch_volume(instance, batch) +
                machine.recoat_time * batch_height(instance, batch);
    times.push_back(previous);
  }
  return times;
}

double makespan(const Solution& solution) {
  double result = 0.0;
  for (const MachineSchedule& schedule : solution.machines) {
    for (double t : schedule.completion_times) result = std::max(result, t);
  }
  return result;
}

namespace {

bool open_intervals_intersect(int a_start, int a_end, int b_start, int b_end) {
  return a_start < b_end && b_start < a_end;
}

void check_batch_geometry(const Instance& instance, const Machine& machine,
                          const Batch& batch, ValidationReport& report) {
  const std::string where = "machine " + std::to_string(machine.id) +
                            " batch " + std::to_string(batch.index);
  for (const Placement& p : batch.placements) {
    const Part* part = nullptr;
    for (const Part& candidate : instance.parts) {
      if (candidate.id == p.part_id) {
        part = &candidate;
        break;
      }
    }
    if (part == nullptr) {
      report.violations.push_back({Violation::Kind::UnknownPart,
                                   where + ": part " +
                                       std::to_string(p.part_id)});
      continue;
    }
    const int expect_x = p.rotated ? part->length : part->width;
    const int expect_y = p.rotated ? part->width : part->length;
    if (p.x_extent() != expect_x || p.y_extent() != expect_y) {
      report.violations.push_back(
          {Violation::Kind::DimensionMismatch,
           where + ": part " + std::to_string(p.part_id) + " extents " +
               std::to_string(p.x_extent()) + "x" +
               std::to_string(p.y_extent())});
    }
    if (p.x_start < 0 || p.y_start < 0 || p.x_end > machine.width ||
        p.y_end > machine.length || p.x_start >= p.x_end ||
        p.y_start >= p.y_end) {
      report.violations.push_back({Violation::Kind::OutsideEnvelope,
                                   where + ": part " +
                                       std::to_string(p.part_id)});
    }
    if (part->height > machine.height) {
      report.violations.push_back({Violation::Kind::HeightExceeded,
                                   where + ": part " +
                                       std::to_string(p.part_id)});
    }
  }
  for (std::size_t i = 0; i < batch.placements.size(); ++i) {
    for (std::size_t j = i + 1; j < batch.placements.size(); ++j) {
      const Placement& a = batch.placements[i];
      const Placement& b = batch.placements[j];
      if (open_intervals_intersect(a.x_start, a.x_end, b.x_start, b.x_end) &&
          open_intervals_intersect(a.y_start, a.y_end, b.y_start, b.y_end)) {
        report.violations.push_back(
            {Violation::Kind::Overlap,
             where + ": parts " + std::to_string(a.part_id) + " and " +
                 std::to_string(b.part_id)});
      }
    }
  }
}

}  // namespace

ValidationReport validate_solution(const Instance& instance,
                                   const Solution& solution) {
  ValidationReport report;

  std::map<int, int> seen;  // part id -> number of assignments
  for (const MachineSchedule& schedule : solution.machines) {
    const Machine* machine = nullptr;
    for (const Machine& m : instance.machines) {
      if (m.id == schedule.machine_id) {
        machine = &m;
        break;
      }
    }
    if (machine == nullptr) {
      report.violations.push_back({Violation::Kind::UnknownMachine,
                                   "machine " +
                                       std::to_string(schedule.machine_id)});
      continue;
    }

    int expected_index = 1;
    bool times_computable = true;
    for (const Batch& batch : schedule.batches) {
      if (batch.index != expected_index) {
        report.violations.push_back(
            {Violation::Kind::BatchIndexGap,
             "machine " + std::to_string(machine->id) + " batch " +
                 std::to_string(batch.index) + " expected " +
                 std::to_string(expected_index)});
      }
      ++expected_index;
      if (batch.placements.empty()) {
        report.violations.push_back({Violation::Kind::EmptyBatch,
                                     "machine " + std::to_string(machine->id) +
                                         " batch " +
                                         std::to_string(batch.index)});
        times_computable = false;
        continue;
      }
      check_batch_geometry(instance, *machine, batch, report);
      for (const Placement& p : batch.placements) {
        ++seen[p.part_id];
        bool known = false;
        for (const Part& part : instance.parts) {
          if (part.id == p.part_id) {
            known = true;
            break;
          }
        }
        if (!known) times_computable = false;
      }
    }

    if (times_computable) {
      const std::vector<double> expected =
          completion_times(instance, *machine, schedule.batches);
      if (expected.size() != schedule.completion_times.size()) {
        report.violations.push_back(
            {Violation::Kind::CompletionTimeMismatch,
             "machine " + std::to_string(machine->id) + " count"});
      } else {
        for (std::size_t b = 0; b < expected.size(); ++b) {
          if (std::abs(expected[b] - schedule.completion_times[b]) >
              kTimeTolerance) {
            report.violations.push_back(
                {Violation::Kind::CompletionTimeMismatch,
                 "machine " + std::to_string(machine->id) + " batch " +
                     std::to_string(b + 1)});
          }
        }
      }
    }
  }

  for (const Part& part : instance.parts) {
    const auto it = seen.find(part.id);
    if (it == seen.end()) {
      report.violations.push_back({Violation::Kind::PartitionMissing,
                                   "part " + std::to_string(part.id)});
    } else if (it->second > 1) {
      report.violations.push_back({Violation::Kind::PartitionDuplicate,
                                   "part " + std::to_string(part.id)});
    }
  }
  for (const auto& [id, count] : seen) {
    bool known = false;
    for (const Part& part : instance.parts) {
      if (part.id == id) {
        known = true;
        break;
      }
    }
    if (!known) {
      report.violations.push_back(
          {Violation::Kind::UnknownPart, "part " + std::to_string(id)});
    }
  }

  double recomputed = 0.0;
  for (const MachineSchedule& schedule : solution.machines) {
    for (double t : schedule.completion_times) {
      recomputed = std::max(recomputed, t);
    }
  }
  if (std::abs(recomputed - solution.makespan) > kTimeTolerance) {
    report.violations.push_back(
        {Violation::Kind::MakespanMismatch,
         "stored " + std::to_string(solution.makespan) + " recomputed " +
             std::to_string(recomputed)});
  }

  return report;
}

}  // namespace ampack
