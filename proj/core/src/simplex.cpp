#include "ampack/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ampack {

namespace {

constexpr double kPivotEps = 1e-10;
constexpr double kReducedCostEps = 1e-9;

// Dense simplex over the standard form [A | -I | I] [z; s; a] = b with
// surplus s and artificials a. The basis inverse is kept explicitly; sizes
// here are tens of rows by hundreds of columns.
class DenseSimplex {
 public:
  DenseSimplex(const std::vector<std::vector<double>>& columns,
               std::span<const double> demands)
      : m_(demands.size()), n_(columns.size()) {
    b_.assign(demands.begin(), demands.end());
    for (double d : b_) {
      if (d < 0.0) throw std::invalid_argument("negative demand");
    }
    cols_.resize(n_ + 2 * m_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (columns[j].size() != m_) {
        throw std::invalid_argument("column size mismatch");
      }
      cols_[j] = columns[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      cols_[n_ + i].assign(m_, 0.0);
      cols_[n_ + i][i] = -1.0;  // surplus
      cols_[n_ + m_ + i].assign(m_, 0.0);
      cols_[n_ + m_ + i][i] = 1.0;  // artificial
    }
    binv_.assign(m_, std::vector<double>(m_, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      binv_[i][i] = 1.0;
      basis_[i] = n_ + m_ + i;
    }
    x_basic_ = b_;
  }

  LpResult run() {
    LpResult result;

    std::vector<double> phase1_costs(n_ + 2 * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) phase1_costs[n_ + m_ + i] = 1.0;
    if (!optimize(phase1_costs, /*allow_artificials=*/true, result)) {
      return result;
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_ + m_) infeasibility += x_basic_[i];
    }
    if (infeasibility > 1e-7) {
      result.status = LpResult::Status::Infeasible;
      return result;
    }
    pivot_out_artificials();

    std::vector<double> costs(n_ + 2 * m_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) costs[j] = 1.0;
    if (!optimize(costs, /*allow_artificials=*/false, result)) {
      return result;
    }

    result.status = LpResult::Status::Optimal;
    result.primal.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) result.primal[basis_[i]] = x_basic_[i];
    }
    result.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) result.objective += result.primal[j];
    result.duals = dual_prices(costs);
    result.iterations = iterations_;
    return result;
  }

 private:
  std::vector<double> dual_prices(const std::vector<double>& costs) const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t r = 0; r < m_; ++r) {
        y[i] += costs[basis_[r]] * binv_[r][i];
      }
    }
    return y;
  }

  double reduced_cost(std::size_t j, const std::vector<double>& costs,
                      const std::vector<double>& y) const {
    double value = costs[j];
    for (std::size_t i = 0; i < m_; ++i) value -= y[i] * cols_[j][i];
    return value;
  }

  std::vector<double> apply_binv(const std::vector<double>& column) const {
    std::vector<double> out(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m_; ++k) acc += binv_[i][k] * column[k];
      out[i] = acc;
    }
    return out;
  }

  bool optimize(const std::vector<double>& costs, bool allow_artificials,
                LpResult& result) {
    const int iteration_cap =
        10000 + 50 * static_cast<int>(n_ + 2 * m_);
    while (true) {
      if (++iterations_ > iteration_cap) {
        result.status = LpResult::Status::IterationLimit;
        result.iterations = iterations_;
        return false;
      }
      const std::vector<double> y = dual_prices(costs);
      // Bland: first candidate index by column order.
      std::size_t entering = cols_.size();
      const std::size_t candidate_limit = allow_artificials
                                              ? n_ + 2 * m_
                                              : n_ + m_;
      for (std::size_t j = 0; j < candidate_limit; ++j) {
        if (is_basic(j)) continue;
        if (reduced_cost(j, costs, y) < -kReducedCostEps) {
          entering = j;
          break;
        }
      }
      if (entering == cols_.size()) return true;  // optimal

      const std::vector<double> direction = apply_binv(cols_[entering]);
      std::size_t leaving = m_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (direction[i] > kPivotEps) {
          const double ratio = x_basic_[i] / direction[i];
          if (leaving == m_ || ratio < best_ratio - kPivotEps ||
              (std::abs(ratio - best_ratio) <= kPivotEps &&
               basis_[i] < basis_[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving == m_) {
        // Unbounded direction cannot occur for a covering objective with
        // nonnegative columns; treat as a numerical failure.
        result.status = LpResult::Status::IterationLimit;
        result.iterations = iterations_;
        return false;
      }
      pivot(entering, leaving, direction);
    }
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] == j) return true;
    }
    return false;
  }

  void pivot(std::size_t entering, std::size_t leaving,
             const std::vector<double>& direction) {
    const double pivot_value = direction[leaving];
    for (std::size_t k = 0; k < m_; ++k) binv_[leaving][k] /= pivot_value;
    const double step = x_basic_[leaving] / pivot_value;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == leaving) continue;
      const double factor = direction[i];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        binv_[i][k] -= factor * binv_[leaving][k];
      }
      x_basic_[i] -= factor * step;
    }
    x_basic_[leaving] = step;
    basis_[leaving] = entering;
    for (double& v : x_basic_) {
      if (v < 0.0 && v > -1e-11) v = 0.0;
    }
  }

  void pivot_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (is_basic(j)) continue;
        const std::vector<double> direction = apply_binv(cols_[j]);
        if (std::abs(direction[i]) > 1e-7) {
          pivot(j, i, direction);
          break;
        }
      }
      // A row with no usable pivot is linearly dependent; the artificial
      // stays basic at level zero and never re-enters.
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<double> b_;
  std::vector<std::vector<double>> cols_;
  std::vector<std::vector<double>> binv_;
  std::vector<std::size_t> basis_;
  std::vector<double> x_basic_;
  int iterations_ = 0;
};

double slackness_residual_impl(
    const std::vector<std::vector<double>>& columns,
    std::span<const double> demands, const std::vector<double>& primal,
    const std::vector<double>& duals) {
  double residual = 0.0;
  const std::size_t m = demands.size();
  for (std::size_t i = 0; i < m; ++i) {
    double row_activity = 0.0;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      row_activity += columns[j][i] * primal[j];
    }
    residual = std::max(residual,
                        std::abs(duals[i] * (row_activity - demands[i])));
  }
  for (std::size_t j = 0; j < columns.size(); ++j) {
    double rc = 1.0;
    for (std::size_t i = 0; i < m; ++i) rc -= duals[i] * columns[j][i];
    residual = std::max(residual, std::abs(primal[j] * rc));
  }
  return residual;
}

}  // namespace

LpResult solve_covering_lp(const std::vector<std::vector<double>>& columns,
                           std::span<const double> demands) {
  if (demands.empty()) {
    LpResult result;
    result.primal.assign(columns.size(), 0.0);
    return result;
  }
  DenseSimplex simplex(columns, demands);
  LpResult result = simplex.run();
  if (result.status == LpResult::Status::Optimal) {
    result.complementary_slackness_residual = slackness_residual_impl(
        columns, demands, result.primal, result.duals);
  }
  return result;
}

}  // namespace ampack
