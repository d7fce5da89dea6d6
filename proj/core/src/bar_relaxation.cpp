#include "ampack/bar_relaxation.hpp"

#include <algorithm>
#include <stdexcept>

#include "ampack/simplex.hpp"

namespace ampack {

std::optional<Pattern> pricing_subproblem(std::span<const double> duals,
                                          std::span<const Part> parts,
                                          int machine_length) {
  const std::size_t n = parts.size();
  const int capacity = machine_length;

  // choice per part and capacity: -1 skip, 0 plain slice, 1 rotated slice
  std::vector<std::vector<signed char>> choice(
      n, std::vector<signed char>(capacity + 1, -1));
  std::vector<double> profit(capacity + 1, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const Part& part = parts[i];
    std::vector<double> next = profit;  // skipping is always allowed
    const double plain_profit = duals[i];
    const double rotated_profit =
        duals[i] * pattern_coefficient(part, /*rotated=*/true);
    for (int c = capacity; c >= 0; --c) {
      if (part.length <= c) {
        const double value = profit[c - part.length] + plain_profit;
        if (value > next[c] + 1e-15) {
          next[c] = value;
          choice[i][c] = 0;
        }
      }
      if (part.width != part.length && part.width <= c) {
        const double value = profit[c - part.width] + rotated_profit;
        if (value > next[c] + 1e-15) {
          next[c] = value;
          choice[i][c] = 1;
        }
      }
    }
    profit = std::move(next);
  }

  int best_c = 0;
  for (int c = 1; c <= capacity; ++c) {
    if (profit[c] > profit[best_c]) best_c = c;
  }
  if (1.0 - profit[best_c] >= -1e-9) return std::nullopt;

  Pattern pattern;
  int c = best_c;
  for (std::size_t i = n; i-- > 0;) {
    const signed char taken = choice[i][c];
    if (taken < 0) continue;
    pattern.entries.push_back({static_cast<int>(i), taken == 1});
    c -= taken == 1 ? parts[i].width : parts[i].length;
  }
  std::reverse(pattern.entries.begin(), pattern.entries.end());
  return pattern;
}

namespace {

std::vector<double> pattern_column(const Pattern& pattern,
                                   std::span<const Part> parts) {
  std::vector<double> column(parts.size(), 0.0);
  for (const PatternEntry& entry : pattern.entries) {
    column[entry.part_index] =
        pattern_coefficient(parts[entry.part_index], entry.rotated);
  }
  return column;
}

}  // namespace

BarRelaxationResult bar_relaxation_bound(std::span<const Part> parts,
                                         const Machine& machine) {
  BarRelaxationResult result;
  if (parts.empty()) return result;

  std::vector<Pattern> patterns;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Pattern singleton;
    if (parts[i].length <= machine.length) {
      singleton.entries.push_back({static_cast<int>(i), false});
    } else if (parts[i].width <= machine.length) {
      singleton.entries.push_back({static_cast<int>(i), true});
    } else {
      // No slice of this part fits along the machine length at all.
      result.lp_bound = static_cast<double>(machine.width) + 1.0;
      result.proven_infeasible = true;
      return result;
    }
    patterns.push_back(std::move(singleton));
  }

  std::vector<double> demands(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    demands[i] = static_cast<double>(parts[i].width);
  }

  std::vector<std::vector<double>> columns;
  for (const Pattern& p : patterns) columns.push_back(pattern_column(p, parts));

  const int iteration_cap =
      10 * static_cast<int>(parts.size()) * machine.length;
  while (true) {
    const LpResult lp = solve_covering_lp(columns, demands);
    if (lp.status != LpResult::Status::Optimal) {
      throw std::runtime_error("restricted master could not be solved");
    }
    ++result.iterations;
    result.master_objectives.push_back(lp.objective);
    result.lp_bound = lp.objective;

    if (result.iterations >= iteration_cap) {
      result.hit_iteration_cap = true;
      break;
    }
    const std::optional<Pattern> improving =
        pricing_subproblem(lp.duals, parts, machine.length);
    if (!improving.has_value()) break;
    columns.push_back(pattern_column(*improving, parts));
    patterns.push_back(*improving);
  }

  // The restricted master overestimates the fully priced-out bound, so a
  // verdict is only sound once pricing finds no improving pattern.
  result.proven_infeasible =
      !result.hit_iteration_cap &&
      result.lp_bound > static_cast<double>(machine.width) + 1e-7;
  return result;
}

}  // namespace ampack
