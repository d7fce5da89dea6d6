#pragma once

#include <span>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

enum class PackVerdict { Feasible, Infeasible, Timeout };

struct PackResult {
  PackVerdict verdict = PackVerdict::Infeasible;
  std::vector<Placement> placements;  // populated when Feasible
  long long nodes = 0;
};

struct PackOptions {
  /// Wall-clock budget in seconds; Timeout is returned as a value when it
  /// elapses. Defaults to effectively unbounded.
  double time_budget_s = 1e18;
  /// Start-coordinate domains: meet-in-the-middle sets (default) or the full
  /// integer range. The full range exists as a diagnostic reference; both
  /// settings decide the same feasibility question.
  enum class Domains { MeetInTheMiddle, Full };
  Domains domains = Domains::MeetInTheMiddle;
};

/// Decides whether the parts admit a non-overlapping axis-aligned placement
/// inside the machine's build area, choosing a 90-degree rotation per part.
/// Deterministic: parts are tried by decreasing area, positions ascending.
PackResult exact_orthogonal_pack(std::span<const Part> parts,
                                 const Machine& machine,
                                 const PackOptions& options = {});

/// Shrinks a proven-infeasible part set by repeatedly dropping the
/// smallest-area part while infeasibility can still be certified within the
/// per-call budget. The returned subset is itself infeasible on the machine.
std::vector<Part> reduce_infeasible_subset(std::span<const Part> parts,
                                           const Machine& machine,
                                           double per_call_budget_s);

}  // namespace ampack
