#pragma once

#include <span>
#include <vector>

namespace ampack {

struct LpResult {
  enum class Status { Optimal, Infeasible, IterationLimit };
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> primal;  // one value per column
  std::vector<double> duals;   // one price per demand row
  double complementary_slackness_residual = 0.0;
  int iterations = 0;
};

/// Minimizes the plain sum of column activities z subject to
/// columns * z >= demands, z >= 0, and reports primal values and dual prices.
/// Dense two-phase revised simplex with Bland's rule; intended for the small
/// restricted masters of column generation, not for large programs.
LpResult solve_covering_lp(const std::vector<std::vector<double>>& columns,
                           std::span<const double> demands);

}  // namespace ampack
