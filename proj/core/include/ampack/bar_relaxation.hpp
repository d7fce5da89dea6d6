#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

/// A pattern packs at most one unit-width slice of each listed part along
/// the machine length. A rotated entry contributes width/length of a slice
/// toward the part's width demand instead of a full slice.
struct PatternEntry {
  int part_index;
  bool rotated;
};

struct Pattern {
  std::vector<PatternEntry> entries;
};

/// Exact rational coverage coefficient of an entry (1 or width/length).
inline double pattern_coefficient(const Part& part, bool rotated) {
  if (!rotated) return 1.0;
  return static_cast<double>(part.width) / static_cast<double>(part.length);
}

/// Knapsack pricing over part-rotation choices: maximizes dual profit under
/// the machine-length capacity with at most one orientation per part.
/// Returns a pattern only when its reduced cost is below -1e-9.
std::optional<Pattern> pricing_subproblem(std::span<const double> duals,
                                          std::span<const Part> parts,
                                          int machine_length);

struct BarRelaxationResult {
  double lp_bound = 0.0;
  bool proven_infeasible = false;
  std::vector<double> master_objectives;  // one per column-generation round
  int iterations = 0;
  bool hit_iteration_cap = false;
};

/// Fractional bar-covering bound: slices must be covered by length-feasible
/// patterns, and a bound above the machine width certifies that the parts
/// cannot share one batch.
BarRelaxationResult bar_relaxation_bound(std::span<const Part> parts,
                                         const Machine& machine);

}  // namespace ampack
