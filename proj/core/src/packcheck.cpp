#include "ampack/packcheck.hpp"

#include <chrono>

#include "ampack/bar_relaxation.hpp"
#include "ampack/lower_bound.hpp"

namespace ampack {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> part_ids(std::span<const Part> parts) {
  std::vector<int> ids;
  ids.reserve(parts.size());
  for (const Part& part : parts) ids.push_back(part.id);
  return ids;
}

}  // namespace

const char* check_stage_name(CheckStage stage) {
  switch (stage) {
    case CheckStage::LowerBound:
      return "LB";
    case CheckStage::Dff:
      return "DFF";
    case CheckStage::Bar:
      return "BAR";
    case CheckStage::Exact:
      return "OP";
  }
  return "?";
}

BatchChecker::BatchChecker()
    : suite_(default_dff_suite()),
      combinations_(all_ordered_pairs(suite_.size())) {}

CheckOutcome BatchChecker::check(std::span<const Part> parts,
                                 const Machine& machine,
                                 const CheckBudgets& budgets) const {
  CheckOutcome outcome;

  auto stage_start = Clock::now();
  const int lower_bound = square_cut_lower_bound(parts, machine);
  outcome.stage_seconds[0] = seconds_since(stage_start);
  if (lower_bound > 1) {
    outcome.verdict = CheckOutcome::Verdict::Infeasible;
    outcome.stage = CheckStage::LowerBound;
    outcome.infeasible_part_ids = part_ids(parts);
    return outcome;
  }

  stage_start = Clock::now();
  const bool dff_infeasible =
      dff_proves_infeasible(parts, machine, suite_, combinations_);
  outcome.stage_seconds[1] = seconds_since(stage_start);
  if (dff_infeasible) {
    outcome.verdict = CheckOutcome::Verdict::Infeasible;
    outcome.stage = CheckStage::Dff;
    outcome.infeasible_part_ids = part_ids(parts);
    return outcome;
  }

  stage_start = Clock::now();
  const BarRelaxationResult bar = bar_relaxation_bound(parts, machine);
  outcome.stage_seconds[2] = seconds_since(stage_start);
  if (bar.proven_infeasible) {
    outcome.verdict = CheckOutcome::Verdict::Infeasible;
    outcome.stage = CheckStage::Bar;
    outcome.infeasible_part_ids = part_ids(parts);
    return outcome;
  }

  stage_start = Clock::now();
  PackOptions options;
  options.time_budget_s = budgets.exact_time_s;
  const PackResult packed = exact_orthogonal_pack(parts, machine, options);
  if (packed.verdict == PackVerdict::Feasible) {
    outcome.stage_seconds[3] = seconds_since(stage_start);
    outcome.verdict = CheckOutcome::Verdict::Feasible;
    outcome.placements = packed.placements;
    return outcome;
  }
  if (packed.verdict == PackVerdict::Timeout) {
    outcome.stage_seconds[3] = seconds_since(stage_start);
    outcome.verdict = CheckOutcome::Verdict::Timeout;
    return outcome;
  }

  outcome.verdict = CheckOutcome::Verdict::Infeasible;
  outcome.stage = CheckStage::Exact;
  if (budgets.strengthen && parts.size() > 2) {
    const std::vector<Part> subset =
        reduce_infeasible_subset(parts, machine, budgets.ris_time_s);
    outcome.infeasible_part_ids = part_ids(subset);
  } else {
    outcome.infeasible_part_ids = part_ids(parts);
  }
  outcome.stage_seconds[3] = seconds_since(stage_start);
  return outcome;
}

}  // namespace ampack
