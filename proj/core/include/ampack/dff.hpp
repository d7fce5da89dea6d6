#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

struct Rational {
  long long num = 0;
  long long den = 1;
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

/// A dual feasible function u: [0,1] -> [0,1], monotone with u(0) = 0 and
/// sum u(k) <= 1 whenever sum k <= 1. Used to rescale part dimensions so an
/// area argument can certify packing infeasibility.
///
/// Boundary cases (x exactly at a breakpoint) are decided with integer
/// cross-multiplication, never with floating-point comparisons; a value
/// nudged across a breakpoint by rounding would otherwise fabricate an
/// infeasibility certificate.
class DualFeasibleFunction {
 public:
  static DualFeasibleFunction identity();
  /// u(x) = 1 above 1-eps, x inside [eps, 1-eps], 0 below eps; eps = tenths/10
  /// with tenths in [1, 5].
  static DualFeasibleFunction threshold(int tenths);
  /// u(x) = x where (k+1)x is integral, floor((k+1)x)/k otherwise; k in [1, 9].
  static DualFeasibleFunction staircase(int k);

  Rational evaluate(long long num, long long den) const;
  double operator()(double x) const;
  const std::string& name() const { return name_; }

 private:
  enum class Family { Identity, Threshold, Staircase };
  DualFeasibleFunction(Family family, int parameter, std::string name)
      : family_(family), parameter_(parameter), name_(std::move(name)) {}

  Family family_;
  int parameter_;
  std::string name_;
};

/// Samples random multisets with sum <= 1 and checks sum u(k) <= 1 + 1e-9.
bool passes_dual_feasibility(const DualFeasibleFunction& fn, int trials,
                             std::uint64_t seed);

/// Checks u(x) <= u(y) for x <= y on a grid with the given step.
bool is_monotone_on_grid(const DualFeasibleFunction& fn, double step);

/// The registered functions: identity, thresholds for eps in {0.1..0.5} and
/// staircases for k in {1..9}. Every function is revalidated against the
/// sampled dual-feasibility property at registration; a transcription error
/// in any family would be rejected here rather than corrupt the solver.
std::vector<DualFeasibleFunction> default_dff_suite();

struct DffCombination {
  int width_fn;
  int length_fn;
};

/// All ordered pairs over a suite of the given size.
std::vector<DffCombination> all_ordered_pairs(std::size_t suite_size);

/// True iff no per-part rotation choice keeps every combination's scaled
/// area sum at or below 1 (+1e-12), i.e. the scaled-area argument proves the
/// set unpackable. Exact DFS over rotation choices with running-sum pruning.
bool dff_proves_infeasible(std::span<const Part> parts, const Machine& machine,
                           std::span<const DualFeasibleFunction> suite,
                           std::span<const DffCombination> combinations);

}  // namespace ampack
