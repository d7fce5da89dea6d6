#include "ampack/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ampack/heuristics.hpp"
#include "ampack/model.hpp"
#include "ampack/packcheck.hpp"
#include "ampack/preprocess.hpp"

namespace ampack {

const std::vector<std::vector<int>> CutPool::kEmpty;

void CutPool::insert(int machine_id, std::vector<int> part_ids) {
  std::sort(part_ids.begin(), part_ids.end());
  std::vector<std::vector<int>>& family = cuts_[machine_id];
  for (const std::vector<int>& existing : family) {
    if (std::includes(part_ids.begin(), part_ids.end(), existing.begin(),
                      existing.end())) {
      return;  // an existing cut already dominates the new one
    }
  }
  std::erase_if(family, [&](const std::vector<int>& existing) {
    return std::includes(existing.begin(), existing.end(), part_ids.begin(),
                         part_ids.end());
  });
  family.push_back(std::move(part_ids));
}

bool CutPool::allows(int machine_id,
                     std::span<const int> sorted_part_ids) const {
  const auto it = cuts_.find(machine_id);
  if (it == cuts_.end()) return true;
  for (const std::vector<int>& cut : it->second) {
    if (cut.size() > sorted_part_ids.size()) continue;
    if (std::includes(sorted_part_ids.begin(), sorted_part_ids.end(),
                      cut.begin(), cut.end())) {
      return false;
    }
  }
  return true;
}

const std::vector<std::vector<int>>& CutPool::cuts_for(int machine_id) const {
  const auto it = cuts_.find(machine_id);
  return it == cuts_.end() ? kEmpty : it->second;
}

std::vector<int> CutPool::machine_ids() const {
  std::vector<int> ids;
  ids.reserve(cuts_.size());
  for (const auto& [id, family] : cuts_) ids.push_back(id);
  return ids;
}

std::size_t CutPool::total_cuts() const {
  std::size_t total = 0;
  for (const auto& [id, family] : cuts_) total += family.size();
  return total;
}

double epsilon_measure(std::span<const Part> parts, const Machine& machine) {
  long long used = 0;
  for (const Part& part : parts) used += part.area();
  return 1.0 - static_cast<double>(used) / static_cast<double>(machine.area());
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kValueEps = 1e-9;
constexpr double kHardPackingSeconds = 300.0;

struct OpenBatch {
  std::vector<std::size_t> members;  // part indices, insertion order
  std::vector<int> sorted_ids;       // part ids, kept sorted for pool tests
  double volume = 0.0;
  int height = 0;
  long long area = 0;
};

struct MachineState {
  std::vector<OpenBatch> batches;
  double completion = 0.0;  // committed completion time, tight form
};

class Engine {
 public:
  Engine(const Instance& instance, const SolverConfig& config, CutPool& pool,
         double area_fraction, double time_limit_s)
      : instance_(instance),
        config_(config),
        pool_(pool),
        area_fraction_(area_fraction),
        exclusions_(MachineExclusions::compute(instance)),
        incompatibilities_(IncompatiblePairs::compute(instance, exclusions_)),
        batch_budget_(reduce_batch_count(instance)),
        deadline_(Clock::now() +
                  std::chrono::duration_cast<Clock::duration>(
                      std::chrono::duration<double>(
                          std::clamp(time_limit_s, 0.0, 1e9)))) {
    order_.resize(instance.parts.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) {
                const Part& pa = instance_.parts[a];
                const Part& pb = instance_.parts[b];
                if (pa.area() != pb.area()) return pa.area() > pb.area();
                return pa.id < pb.id;
              });

    // Optimistic remaining work: every unassigned part costs at least its
    // cheapest scan time somewhere; heights and setups are relaxed away.
    suffix_min_scan_.assign(order_.size() + 1, 0.0);
    for (std::size_t k = order_.size(); k-- > 0;) {
      const std::size_t i = order_[k];
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < instance.machines.size(); ++m) {
        if (exclusions_.excluded(i, m)) continue;
        cheapest = std::min(cheapest, instance.machines[m].scan_time *
                                          instance_.parts[i].volume);
      }
      if (!std::isfinite(cheapest)) {
        throw std::invalid_argument("instance has a part fitting no machine");
      }
      suffix_min_scan_[k] = suffix_min_scan_[k + 1] + cheapest;
    }

    machines_.resize(instance.machines.size());
  }

  SolveResult run(const Solution* warm_start) {
    SolveResult result;
    if (warm_start != nullptr) {
      incumbent_ = *warm_start;
      upper_ = warm_start->makespan;
    }

    dfs(0);

    result.incumbent = incumbent_;
    result.upper = upper_;
    const bool fully_explored = !timed_out_;
    if (fully_explored && open_min_ == std::numeric_limits<double>::infinity()) {
      result.lower = upper_;
    } else {
      result.lower = std::min(upper_, open_min_);
    }
    result.status = (fully_explored &&
                     (result.upper - result.lower) <=
                         config_.gap_tolerance * std::max(result.upper, 1e-30))
                        ? SolveResult::Status::Optimal
                        : SolveResult::Status::TimeLimit;
    if (result.upper <= 0.0 && fully_explored) {
      result.status = SolveResult::Status::Optimal;
    }
    result.stats = stats_;
    return result;
  }

 private:
  double residual_seconds() const {
    return std::chrono::duration<double>(deadline_ - Clock::now()).count();
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if (Clock::now() >= deadline_) timed_out_ = true;
    return timed_out_;
  }

  double node_bound(std::size_t next_rank) const {
    double worst = 0.0;
    double total = 0.0;
    for (const MachineState& state : machines_) {
      worst = std::max(worst, state.completion);
      total += state.completion;
    }
    const double averaged =
        (total + suffix_min_scan_[next_rank]) /
        static_cast<double>(machines_.size());
    return std::max(worst, averaged);
  }

  void dfs(std::size_t rank) {
    ++stats_.nodes;
    if (rank == order_.size()) {
      verify_leaf();
      return;
    }
    const std::size_t part_index = order_[rank];
    const Part& part = instance_.parts[part_index];

    for (std::size_t m = 0; m < instance_.machines.size(); ++m) {
      if (exclusions_.excluded(part_index, m)) continue;
      const Machine& machine = instance_.machines[m];
      MachineState& state = machines_[m];
      const double area_cap =
          area_fraction_ * static_cast<double>(machine.area()) + 1e-9;

      const std::size_t open_count = state.batches.size();
      const std::size_t slot_count =
          open_count +
          (open_count < static_cast<std::size_t>(batch_budget_) ? 1 : 0);
      for (std::size_t b = 0; b < slot_count; ++b) {
        const bool new_batch = b == open_count;
        if (!new_batch) {
          OpenBatch& batch = state.batches[b];
          if (static_cast<double>(batch.area + part.area()) > area_cap) {
            continue;
          }
          bool conflict = false;
          for (std::size_t member : batch.members) {
            if (incompatibilities_.incompatible(m, part_index, member)) {
              conflict = true;
              break;
            }
          }
          if (conflict) continue;
          std::vector<int> candidate_ids = batch.sorted_ids;
          candidate_ids.insert(
              std::lower_bound(candidate_ids.begin(), candidate_ids.end(),
                               part.id),
              part.id);
          if (!pool_.allows(machine.id, candidate_ids)) continue;
        } else {
          if (static_cast<double>(part.area()) > area_cap) continue;
        }

        // Apply the move, tracking exactly what must be undone.
        const double previous_completion = state.completion;
        if (new_batch) {
          OpenBatch batch;
          batch.members.push_back(part_index);
          batch.sorted_ids.push_back(part.id);
          batch.volume = part.volume;
          batch.height = part.height;
          batch.area = part.area();
          state.batches.push_back(std::move(batch));
          state.completion += machine.setup_time +
                              machine.scan_time * part.volume +
                              machine.recoat_time * part.height;
        } else {
          OpenBatch& batch = state.batches[b];
          const int previous_height = batch.height;
          batch.members.push_back(part_index);
          batch.sorted_ids.insert(
              std::lower_bound(batch.sorted_ids.begin(),
                               batch.sorted_ids.end(), part.id),
              part.id);
          batch.volume += part.volume;
          batch.area += part.area();
          batch.height = std::max(batch.height, part.height);
          state.completion +=
              machine.scan_time * part.volume +
              machine.recoat_time * (batch.height - previous_height);
        }

        const double bound = node_bound(rank + 1);
        if (bound < upper_ - kValueEps) {
          if (out_of_time()) {
            open_min_ = std::min(open_min_, bound);
          } else {
            dfs(rank + 1);
          }
        }

        // Undo.
        if (new_batch) {
          state.batches.pop_back();
        } else {
          OpenBatch& batch = state.batches[b];
          batch.members.pop_back();
          batch.sorted_ids.erase(
              std::lower_bound(batch.sorted_ids.begin(),
                               batch.sorted_ids.end(), part.id));
          batch.volume -= part.volume;
          batch.area -= part.area();
          batch.height = 0;
          for (std::size_t member : batch.members) {
            batch.height =
                std::max(batch.height, instance_.parts[member].height);
          }
        }
        state.completion = previous_completion;
      }
    }
  }

  struct LeafBatch {
    std::size_t machine_index;
    std::size_t batch_index;
    double density;
  };

  void verify_leaf() {
    ++stats_.leaves;

    std::vector<LeafBatch> pending;
    for (std::size_t m = 0; m < machines_.size(); ++m) {
      const long long machine_area = instance_.machines[m].area();
      for (std::size_t b = 0; b < machines_[m].batches.size(); ++b) {
        pending.push_back({m, b,
                           static_cast<double>(machines_[m].batches[b].area) /
                               static_cast<double>(machine_area)});
      }
    }
    // Densest first: the most likely infeasible batches produce cuts early.
    std::sort(pending.begin(), pending.end(),
              [](const LeafBatch& a, const LeafBatch& b) {
                if (a.density != b.density) return a.density > b.density;
                if (a.machine_index != b.machine_index) {
                  return a.machine_index < b.machine_index;
                }
                return a.batch_index < b.batch_index;
              });

    const double leaf_value = [&]() {
      double worst = 0.0;
      for (const MachineState& state : machines_) {
        worst = std::max(worst, state.completion);
      }
      return worst;
    }();

    bool all_feasible = true;
    for (const LeafBatch& entry : pending) {
      const OpenBatch& batch =
          machines_[entry.machine_index].batches[entry.batch_index];
      if (batch.members.size() == 1) continue;  // fits alone by exclusion test
      const Machine& machine = instance_.machines[entry.machine_index];

      const auto memo_key = std::make_pair(machine.id, batch.sorted_ids);
      if (feasible_cache_.contains(memo_key)) continue;

      std::vector<Part> parts;
      parts.reserve(batch.members.size());
      for (std::size_t member : batch.members) {
        parts.push_back(instance_.parts[member]);
      }

      const double residual = std::max(residual_seconds(), 0.0);
      CheckBudgets budgets;
      budgets.exact_time_s = residual;
      budgets.ris_time_s = std::min(config_.ris_budget_s, residual);
      budgets.strengthen = true;

      const CheckOutcome outcome = checker_.check(parts, machine, budgets);
      ++stats_.batches_checked;
      for (int s = 0; s < 4; ++s) {
        stats_.stage_seconds[s] += outcome.stage_seconds[s];
      }
      stats_.max_exact_seconds =
          std::max(stats_.max_exact_seconds, outcome.stage_seconds[3]);
      if (outcome.stage_seconds[3] > kHardPackingSeconds) {
        ++stats_.hard_packings;
        stats_.hard_packing_eps.push_back(epsilon_measure(parts, machine));
      }

      switch (outcome.verdict) {
        case CheckOutcome::Verdict::Feasible:
          feasible_cache_.emplace(memo_key, outcome.placements);
          break;
        case CheckOutcome::Verdict::Infeasible:
          switch (outcome.stage) {
            case CheckStage::LowerBound: ++stats_.cuts.lower_bound; break;
            case CheckStage::Dff: ++stats_.cuts.dff; break;
            case CheckStage::Bar: ++stats_.cuts.bar; break;
            case CheckStage::Exact: ++stats_.cuts.exact; break;
          }
          pool_.insert(machine.id, outcome.infeasible_part_ids);
          all_feasible = false;
          break;
        case CheckOutcome::Verdict::Timeout:
          // The leaf stays unverified: it must neither become the incumbent
          // nor silently vanish from the lower bound.
          open_min_ = std::min(open_min_, leaf_value);
          all_feasible = false;
          break;
      }
      if (out_of_time() && outcome.verdict == CheckOutcome::Verdict::Timeout) {
        break;
      }
    }

    if (!all_feasible) return;
    if (leaf_value >= upper_ - kValueEps) return;

    Solution solution;
    solution.machines.resize(machines_.size());
    for (std::size_t m = 0; m < machines_.size(); ++m) {
      MachineSchedule& schedule = solution.machines[m];
      schedule.machine_id = instance_.machines[m].id;
      for (std::size_t b = 0; b < machines_[m].batches.size(); ++b) {
        const OpenBatch& open = machines_[m].batches[b];
        Batch batch;
        batch.machine_id = instance_.machines[m].id;
        batch.index = static_cast<int>(b) + 1;
        if (open.members.size() == 1) {
          const Part& part = instance_.parts[open.members[0]];
          batch.placements.push_back(single_placement(part,
                                                      instance_.machines[m]));
        } else {
          const auto memo_key =
              std::make_pair(instance_.machines[m].id, open.sorted_ids);
          batch.placements = feasible_cache_.at(memo_key);
        }
        schedule.batches.push_back(std::move(batch));
      }
      schedule.completion_times = completion_times(
          instance_, instance_.machines[m], schedule.batches);
    }
    solution.makespan = makespan(solution);
    incumbent_ = std::move(solution);
    upper_ = incumbent_.makespan;
  }

  static Placement single_placement(const Part& part, const Machine& machine) {
    if (part.width <= machine.width && part.length <= machine.length) {
      return {part.id, 0, part.width, 0, part.length, false};
    }
    return {part.id, 0, part.length, 0, part.width, true};
  }

  const Instance& instance_;
  const SolverConfig& config_;
  CutPool& pool_;
  double area_fraction_;
  MachineExclusions exclusions_;
  IncompatiblePairs incompatibilities_;
  int batch_budget_;
  Clock::time_point deadline_;
  BatchChecker checker_;

  std::vector<std::size_t> order_;
  std::vector<double> suffix_min_scan_;
  std::vector<MachineState> machines_;
  std::map<std::pair<int, std::vector<int>>, std::vector<Placement>>
      feasible_cache_;

  Solution incumbent_;
  double upper_ = std::numeric_limits<double>::infinity();
  double open_min_ = std::numeric_limits<double>::infinity();
  bool timed_out_ = false;
  SolverStats stats_;
};

void merge_stats(SolverStats& into, const SolverStats& from) {
  into.batches_checked += from.batches_checked;
  into.cuts.lower_bound += from.cuts.lower_bound;
  into.cuts.dff += from.cuts.dff;
  into.cuts.bar += from.cuts.bar;
  into.cuts.exact += from.cuts.exact;
  for (int s = 0; s < 4; ++s) into.stage_seconds[s] += from.stage_seconds[s];
  into.max_exact_seconds =
      std::max(into.max_exact_seconds, from.max_exact_seconds);
  into.hard_packings += from.hard_packings;
  into.hard_packing_eps.insert(into.hard_packing_eps.end(),
                               from.hard_packing_eps.begin(),
                               from.hard_packing_eps.end());
  into.nodes += from.nodes;
  into.leaves += from.leaves;
}

}  // namespace

SolveResult solve_with_pool(const Instance& instance,
                            const SolverConfig& config, CutPool& pool,
                            const Solution* warm_start, double area_fraction,
                            double time_limit_s) {
  Engine engine(instance, config, pool, area_fraction, time_limit_s);
  return engine.run(warm_start);
}

SolveResult solve(const Instance& instance, const SolverConfig& config) {
  const MachineExclusions exclusions = MachineExclusions::compute(instance);
  const std::vector<SortingStrategy> strategies =
      default_strategies(config.seed);
  const Solution start =
      start_solution(instance, exclusions, strategies, config.seed);
  CutPool pool;
  return solve_with_pool(instance, config, pool, &start, 1.0,
                         config.time_limit_s);
}

SolveResult solve_two_step(const Instance& instance,
                           const SolverConfig& config) {
  const auto started = Clock::now();
  const MachineExclusions exclusions = MachineExclusions::compute(instance);
  const std::vector<SortingStrategy> strategies =
      default_strategies(config.seed);
  const Solution start =
      start_solution(instance, exclusions, strategies, config.seed);

  CutPool pool;
  SolveResult restricted = solve_with_pool(
      instance, config, pool, &start, config.two_step_area_fraction,
      config.two_step_time_fraction * config.time_limit_s);

  // The restricted phase only contributes its incumbent and its cuts; its
  // bounds describe a different feasible set and are discarded.
  const Solution& warm =
      restricted.upper < start.makespan ? restricted.incumbent : start;

  const double elapsed =
      std::chrono::duration<double>(Clock::now() - started).count();
  SolveResult result = solve_with_pool(
      instance, config, pool, &warm, 1.0,
      std::max(config.time_limit_s - elapsed, 0.0));
  merge_stats(result.stats, restricted.stats);
  return result;
}

}  // namespace ampack
