#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

struct SolverConfig {
  double time_limit_s = 3600.0;
  double ris_budget_s = 2.0;           // per exact call while shrinking cuts
  double two_step_area_fraction = 0.90;
  double two_step_time_fraction = 0.10;
  double gap_tolerance = 7e-6;
  std::uint64_t seed = 1;
};

struct StageCuts {
  long long lower_bound = 0;
  long long dff = 0;
  long long bar = 0;
  long long exact = 0;
  long long total() const { return lower_bound + dff + bar + exact; }
};

struct SolverStats {
  long long batches_checked = 0;
  StageCuts cuts;
  std::array<double, 4> stage_seconds{};  // LB, DFF, BAR, OP
  double max_exact_seconds = 0.0;
  int hard_packings = 0;  // exact-stage checks above 300 s
  std::vector<double> hard_packing_eps;
  long long nodes = 0;
  long long leaves = 0;
};

/// Per-machine family of part subsets proven unpackable on that machine.
/// Kept antichain-reduced: inserting a subset drops its stored supersets,
/// whose rejections the new subset still covers.
class CutPool {
 public:
  /// part_ids need not be sorted; duplicates are not expected.
  void insert(int machine_id, std::vector<int> part_ids);

  /// True when no stored cut is fully contained in the candidate batch.
  bool allows(int machine_id, std::span<const int> sorted_part_ids) const;

  const std::vector<std::vector<int>>& cuts_for(int machine_id) const;
  std::vector<int> machine_ids() const;
  std::size_t total_cuts() const;

 private:
  std::map<int, std::vector<std::vector<int>>> cuts_;
  static const std::vector<std::vector<int>> kEmpty;
};

struct SolveResult {
  enum class Status { Optimal, TimeLimit };
  Solution incumbent;
  double upper = 0.0;
  double lower = 0.0;
  Status status = Status::Optimal;
  SolverStats stats;

  double gap() const {
    if (upper <= 0.0) return 0.0;
    return (upper - lower) / upper;
  }
};

/// Exact makespan minimization by branch-and-bound over machine/batch
/// assignments with lazy packing verification and no-good cuts.
SolveResult solve(const Instance& instance, const SolverConfig& config);

/// Two-phase variant: a short run with batch areas capped at a fraction of
/// the machine area improves the start solution, then the full run reuses
/// its incumbent and cut pool (packability cuts are area-independent).
SolveResult solve_two_step(const Instance& instance,
                           const SolverConfig& config);

/// Engine entry with shared state. area_fraction scales the per-batch area
/// prefilter; the pool is read and extended; warm_start seeds the incumbent.
SolveResult solve_with_pool(const Instance& instance,
                            const SolverConfig& config, CutPool& pool,
                            const Solution* warm_start, double area_fraction,
                            double time_limit_s);

/// Free-area fraction of a batch: sum of part areas = (1 - eps) * machine
/// area. 1 for an empty batch.
double epsilon_measure(std::span<const Part> parts, const Machine& machine);

}  // namespace ampack
