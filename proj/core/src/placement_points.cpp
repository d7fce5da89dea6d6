#include "ampack/placement_points.hpp"

#include <algorithm>

namespace ampack {

std::vector<int> rotation_extents(const Part& part) {
  if (part.width == part.length) return {part.width};
  return {part.width, part.length};
}

namespace {

std::vector<char> reachable_table(std::span<const Part> parts, int capacity) {
  std::vector<char> table(static_cast<std::size_t>(capacity) + 1, 0);
  table[0] = 1;
  for (const Part& part : parts) {
    // Apply both rotations against the pre-part state so that at most one
    // extent of this part enters any sum.
    const std::vector<char> before = table;
    for (int extent : rotation_extents(part)) {
      if (extent > capacity) continue;
      for (int p = capacity - extent; p >= 0; --p) {
        if (before[p]) table[p + extent] = 1;
      }
    }
  }
  return table;
}

}  // namespace

std::vector<int> adjusted_normal_patterns(std::span<const Part> parts,
                                          int capacity) {
  if (capacity < 0) capacity = 0;
  const std::vector<char> table = reachable_table(parts, capacity);
  std::vector<int> positions;
  for (int p = 0; p <= capacity; ++p) {
    if (table[p]) positions.push_back(p);
  }
  return positions;
}

std::vector<std::vector<int>> adjusted_minimal_mim_sets(
    std::span<const Part> parts, int capacity) {
  const std::size_t n = parts.size();
  if (capacity <= 0) {
    return std::vector<std::vector<int>>(n, std::vector<int>{0});
  }
  std::vector<std::vector<int>> normals_without(n);
  std::vector<Part> others;
  others.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    others.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(parts[j]);
    }
    const int min_extent = parts[i].min_side();
    normals_without[i] =
        adjusted_normal_patterns(others, capacity - min_extent);
  }

  std::vector<long long> left(static_cast<std::size_t>(capacity) + 1, 0);
  std::vector<long long> right(static_cast<std::size_t>(capacity) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int p : normals_without[i]) {
      left[p] = 1;
      for (int extent : rotation_extents(parts[i])) {
        if (extent >= capacity) continue;
        const int mirror = capacity - extent - p;
        if (mirror >= 0) ++right[mirror];
      }
    }
  }
  for (int p = 1; p <= capacity; ++p) {
    left[p] += left[p - 1];
    right[capacity - p] += right[capacity - p + 1];
  }

  int threshold = 1;
  long long best = left[0] + right[1];
  for (int p = 2; p <= capacity; ++p) {
    const long long cost = left[p - 1] + right[p];
    if (cost < best) {
      best = cost;
      threshold = p;
    }
  }

  std::vector<std::vector<int>> result(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int>& points = result[i];
    for (int p : normals_without[i]) {
      if (p < threshold) points.push_back(p);
      for (int extent : rotation_extents(parts[i])) {
        const int mirror = capacity - extent - p;
        if (mirror >= threshold) points.push_back(mirror);
      }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
  return result;
}

}  // namespace ampack
