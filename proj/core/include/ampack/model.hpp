#pragma once

#include <span>
#include <string>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

/// Comparison tolerance for completion times and makespans (hours).
inline constexpr double kTimeTolerance = 1e-9;

/// True iff the part fits the build envelope, allowing a 90-degree rotation.
bool part_fits_machine(const Part& part, const Machine& machine);

/// Completion time of each batch in sequence order. Uses the tight form
/// c_b = c_{b-1} + setup + scan * total volume + recoat * batch height.
/// Throws std::invalid_argument on an empty batch: empty batches are never
/// scheduled.
std::vector<double> completion_times(const Instance& instance,
                                     const Machine& machine,
                                     std::span<const Batch> ordered_batches);

/// Maximum completion time over all machines; 0 for an empty solution.
double makespan(const Solution& solution);

struct Violation {
  enum class Kind {
    PartitionMissing,
    PartitionDuplicate,
    UnknownPart,
    OutsideEnvelope,
    Overlap,
    DimensionMismatch,
    HeightExceeded,
    BatchIndexGap,
    EmptyBatch,
    CompletionTimeMismatch,
    MakespanMismatch,
    UnknownMachine,
  };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Independent checker for every model constraint; violations are data, not
/// exceptions. Acts as the correctness oracle for the solver and heuristics.
ValidationReport validate_solution(const Instance& instance,
                                   const Solution& solution);

}  // namespace ampack
