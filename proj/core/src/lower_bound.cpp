#include "ampack/lower_bound.hpp"

#include <algorithm>

namespace ampack {

std::vector<int> cut_into_squares(std::span<const Part> parts) {
  std::vector<int> sides;
  for (const Part& part : parts) {
    int longer = part.max_side();
    int shorter = part.min_side();
    while (shorter > 0) {
      sides.push_back(shorter);
      longer -= shorter;
      if (longer < shorter) std::swap(longer, shorter);
    }
  }
  return sides;
}

namespace {

long long ceil_div(long long num, long long den) {
  return (num + den - 1) / den;
}

}  // namespace

// Threshold sets over the square sides, for a bin normalized to w >= h
// (squares cannot tell the bin orientations apart):
//   S1: side > w - q          alone among sides >= q
//   S2: w - q >= side > w/2   pairwise alone, cannot join an S1 bin
//   S3: w/2 >= side > h/2     one row per bin, several per row
//   S4: h/2 >= side >= q      only the area argument sees these
// Sides above w/2 in S3's range can sometimes ride along in an S2 bin, so
// the row count only covers the sides provably incompatible with every S2
// side. Sides in S2 u S3 taller than h - q waste the strip above them for
// anything of side >= q, which tightens the closing area argument.
int square_cut_lower_bound(std::span<const Part> parts,
                           const Machine& machine) {
  const std::vector<int> squares = cut_into_squares(parts);
  if (squares.empty()) return 0;

  const long long w = std::max(machine.width, machine.length);
  const long long h = std::min(machine.width, machine.length);
  const long long bin_area = w * h;

  int best = 0;
  for (long long q = 0; q <= h / 2; ++q) {
    long long count_s1 = 0;
    long long count_s2 = 0;
    long long min_s2_side = w + 1;
    std::vector<long long> s3_sides;
    long long mixed_area_sum = 0;  // sum of side^2 over S2 u S3 u S4
    long long dead_space = 0;      // strips above sides taller than h - q
    for (int side : squares) {
      const long long s = side;
      if (s > w - q) {
        ++count_s1;
        continue;
      }
      const bool in_s2 = 2 * s > w;
      const bool in_s3 = !in_s2 && 2 * s > h;
      const bool in_s4 = !in_s2 && !in_s3 && s >= q;
      if (in_s2) {
        ++count_s2;
        min_s2_side = std::min(min_s2_side, s);
      }
      if (in_s3) s3_sides.push_back(s);
      if (in_s2 || in_s3 || in_s4) mixed_area_sum += s * s;
      if ((in_s2 || in_s3) && s > h - q) dead_space += s * (h - s);
    }

    long long stubborn_count = 0;  // S3 sides that fit beside no S2 side
    long long stubborn_sum = 0;
    for (long long s : s3_sides) {
      if (count_s2 == 0 || min_s2_side + s > w) {
        ++stubborn_count;
        stubborn_sum += s;
      }
    }

    long long tall_bins = count_s2;
    if (stubborn_count > 0) {
      const long long per_row = w / (h / 2 + 1);
      tall_bins += std::max(ceil_div(stubborn_sum, w),
                            ceil_div(stubborn_count, per_row));
    }

    long long bound = count_s1 + tall_bins;
    const long long residual =
        mixed_area_sum - (bin_area * tall_bins - dead_space);
    if (residual > 0) bound += ceil_div(residual, bin_area);

    best = std::max<int>(best, static_cast<int>(bound));
  }
  return best;
}

}  // namespace ampack
