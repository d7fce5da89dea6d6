#pragma once

#include <array>
#include <span>
#include <vector>

#include "ampack/dff.hpp"
#include "ampack/orthogonal_packing.hpp"
#include "ampack/types.hpp"

namespace ampack {

enum class CheckStage : int { LowerBound = 0, Dff = 1, Bar = 2, Exact = 3 };

const char* check_stage_name(CheckStage stage);

struct CheckOutcome {
  enum class Verdict { Feasible, Infeasible, Timeout };
  Verdict verdict = Verdict::Feasible;
  std::vector<Placement> placements;     // populated when Feasible
  std::vector<int> infeasible_part_ids;  // certified subset when Infeasible
  CheckStage stage = CheckStage::LowerBound;
  std::array<double, 4> stage_seconds{};
};

struct CheckBudgets {
  double exact_time_s = 1e18;  // budget for the exact packing stage
  double ris_time_s = 2.0;     // per-call budget while shrinking a subset
  bool strengthen = true;      // extract a reduced infeasible subset
};

/// Runs the staged feasibility pipeline for one candidate batch: square-cut
/// lower bound, scaled-area relaxation, bar relaxation, then the exact
/// packing. The first stage that proves infeasibility wins and tags the
/// outcome. Callers guarantee that every part fits the machine individually
/// and that the summed part area does not exceed the build area.
class BatchChecker {
 public:
  BatchChecker();

  CheckOutcome check(std::span<const Part> parts, const Machine& machine,
                     const CheckBudgets& budgets = {}) const;

  const std::vector<DualFeasibleFunction>& suite() const { return suite_; }

 private:
  std::vector<DualFeasibleFunction> suite_;
  std::vector<DffCombination> combinations_;
};

}  // namespace ampack
