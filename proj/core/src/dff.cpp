#include "ampack/dff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ampack/model.hpp"
#include "ampack/rng.hpp"

namespace ampack {

DualFeasibleFunction DualFeasibleFunction::identity() {
  return DualFeasibleFunction(Family::Identity, 0, "identity");
}

DualFeasibleFunction DualFeasibleFunction::threshold(int tenths) {
  if (tenths < 1 || tenths > 5) {
    throw std::invalid_argument("threshold parameter out of range");
  }
  return DualFeasibleFunction(Family::Threshold, tenths,
                              "threshold-eps-" + std::to_string(tenths) +
                                  "/10");
}

DualFeasibleFunction DualFeasibleFunction::staircase(int k) {
  if (k < 1 || k > 9) {
    throw std::invalid_argument("staircase parameter out of range");
  }
  return DualFeasibleFunction(Family::Staircase, k,
                              "staircase-k-" + std::to_string(k));
}

Rational DualFeasibleFunction::evaluate(long long num, long long den) const {
  switch (family_) {
    case Family::Identity:
      return {num, den};
    case Family::Threshold: {
      const long long e = parameter_;
      if (10 * num > (10 - e) * den) return {1, 1};  // x > 1 - eps
      if (10 * num < e * den) return {0, 1};         // x < eps
      return {num, den};
    }
    case Family::Staircase: {
      const long long k = parameter_;
      const long long scaled = (k + 1) * num;
      if (scaled % den == 0) return {num, den};
      return {scaled / den, k};
    }
  }
  return {num, den};
}

double DualFeasibleFunction::operator()(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  constexpr double kScale = 9007199254740992.0;  // 2^53
  const long long num = std::llround(x * kScale);
  return evaluate(num, static_cast<long long>(kScale)).to_double();
}

bool passes_dual_feasibility(const DualFeasibleFunction& fn, int trials,
                             std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int count = rng.uniform_int(1, 8);
    std::vector<double> values(count);
    double sum = 0.0;
    for (double& v : values) {
      v = rng.uniform_real(0.0, 1.0);
      sum += v;
    }
    if (sum > 1.0) {
      const double scale = (1.0 - 1e-12) / sum;
      sum = 0.0;
      for (double& v : values) {
        v *= scale;
        sum += v;
      }
      if (sum > 1.0) continue;  // premise lost to rounding, trial is vacuous
    }
    double mapped = 0.0;
    for (double v : values) mapped += fn(v);
    if (mapped > 1.0 + 1e-9) return false;
  }
  return true;
}

bool is_monotone_on_grid(const DualFeasibleFunction& fn, double step) {
  double previous = fn(0.0);
  if (previous > 1e-15) return false;  // u(0) = 0
  for (double x = step; x <= 1.0 + step / 2; x += step) {
    const double value = fn(std::min(x, 1.0));
    if (value + 1e-12 < previous) return false;
    previous = value;
  }
  return true;
}

std::vector<DualFeasibleFunction> default_dff_suite() {
  std::vector<DualFeasibleFunction> suite;
  suite.push_back(DualFeasibleFunction::identity());
  for (int tenths = 1; tenths <= 5; ++tenths) {
    suite.push_back(DualFeasibleFunction::threshold(tenths));
  }
  for (int k = 1; k <= 9; ++k) {
    suite.push_back(DualFeasibleFunction::staircase(k));
  }
  for (const DualFeasibleFunction& fn : suite) {
    if (!passes_dual_feasibility(fn, 2000, 0x5eedULL) ||
        !is_monotone_on_grid(fn, 1e-3)) {
      throw std::logic_error("rejected dual feasible function: " + fn.name());
    }
  }
  return suite;
}

std::vector<DffCombination> all_ordered_pairs(std::size_t suite_size) {
  std::vector<DffCombination> combos;
  combos.reserve(suite_size * suite_size);
  for (std::size_t a = 0; a < suite_size; ++a) {
    for (std::size_t b = 0; b < suite_size; ++b) {
      combos.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  }
  return combos;
}

namespace {

constexpr double kAreaTolerance = 1e-12;

struct RotationChoice {
  std::vector<double> scaled_areas;  // one per combination
};

struct PartChoices {
  std::vector<RotationChoice> rotations;  // 1 or 2 valid entries
};

bool choice_exists(std::size_t index, const std::vector<PartChoices>& parts,
                   const std::vector<std::vector<double>>& suffix_min,
                   std::vector<double>& sums) {
  const std::size_t combos = sums.size();
  for (std::size_t c = 0; c < combos; ++c) {
    if (sums[c] + suffix_min[index][c] > 1.0 + kAreaTolerance) return false;
  }
  if (index == parts.size()) return true;
  for (const RotationChoice& rotation : parts[index].rotations) {
    for (std::size_t c = 0; c < combos; ++c) {
      sums[c] += rotation.scaled_areas[c];
    }
    if (choice_exists(index + 1, parts, suffix_min, sums)) return true;
    for (std::size_t c = 0; c < combos; ++c) {
      sums[c] -= rotation.scaled_areas[c];
    }
  }
  return false;
}

}  // namespace

bool dff_proves_infeasible(std::span<const Part> parts, const Machine& machine,
                           std::span<const DualFeasibleFunction> suite,
                           std::span<const DffCombination> combinations) {
  if (parts.empty() || combinations.empty()) return false;
  const std::size_t combos = combinations.size();

  std::vector<PartChoices> choices;
  choices.reserve(parts.size());
  for (const Part& part : parts) {
    PartChoices entry;
    const int dims[2][2] = {{part.width, part.length},
                            {part.length, part.width}};
    const int variant_count = part.width == part.length ? 1 : 2;
    for (int v = 0; v < variant_count; ++v) {
      const int w = dims[v][0];
      const int l = dims[v][1];
      if (w > machine.width || l > machine.length) continue;
      RotationChoice rotation;
      rotation.scaled_areas.resize(combos);
      for (std::size_t c = 0; c < combos; ++c) {
        const Rational uw =
            suite[combinations[c].width_fn].evaluate(w, machine.width);
        const Rational ul =
            suite[combinations[c].length_fn].evaluate(l, machine.length);
        rotation.scaled_areas[c] = uw.to_double() * ul.to_double();
      }
      entry.rotations.push_back(std::move(rotation));
    }
    if (entry.rotations.empty()) return true;  // fits in no orientation
    choices.push_back(std::move(entry));
  }

  // Largest unavoidable contribution first makes the pruning bite early.
  std::sort(choices.begin(), choices.end(),
            [](const PartChoices& a, const PartChoices& b) {
              auto smallest = [](const PartChoices& p) {
                double best = 0.0;
                for (std::size_t i = 0; i < p.rotations.size(); ++i) {
                  const double area = p.rotations[i].scaled_areas[0];
                  if (i == 0 || area < best) best = area;
                }
                return best;
              };
              return smallest(a) > smallest(b);
            });

  std::vector<std::vector<double>> suffix_min(
      choices.size() + 1, std::vector<double>(combos, 0.0));
  for (std::size_t i = choices.size(); i-- > 0;) {
    for (std::size_t c = 0; c < combos; ++c) {
      double least = choices[i].rotations[0].scaled_areas[c];
      for (const RotationChoice& rotation : choices[i].rotations) {
        least = std::min(least, rotation.scaled_areas[c]);
      }
      suffix_min[i][c] = suffix_min[i + 1][c] + least;
    }
  }

  std::vector<double> sums(combos, 0.0);
  return !choice_exists(0, choices, suffix_min, sums);
}

}  // namespace ampack
