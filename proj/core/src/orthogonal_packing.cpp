#include "ampack/orthogonal_packing.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "ampack/placement_points.hpp"

namespace ampack {

namespace {

using Clock = std::chrono::steady_clock;

struct Variant {
  int w;
  int l;
  bool rotated;
};

struct SearchState {
  std::span<const Part> parts;           // in search order
  const Machine* machine;
  std::vector<std::vector<int>> x_domains;
  std::vector<int> y_domain;
  std::vector<std::vector<Variant>> variants;
  std::vector<Placement> placed;
  Clock::time_point deadline;
  long long nodes = 0;
  bool timed_out = false;

  bool out_of_time() {
    if (timed_out) return true;
    if ((nodes & 0x3ff) == 1 && Clock::now() >= deadline) timed_out = true;
    return timed_out;
  }

  bool overlaps(int x0, int x1, int y0, int y1) const {
    for (const Placement& p : placed) {
      if (p.x_start < x1 && x0 < p.x_end && p.y_start < y1 && y0 < p.y_end) {
        return true;
      }
    }
    return false;
  }

  bool search(std::size_t k) {
    if (k == parts.size()) return true;
    const Part& part = parts[k];
    const bool same_as_previous =
        k > 0 && parts[k - 1].width == part.width &&
        parts[k - 1].length == part.length;
    // Identical parts are interchangeable, so their positions can be taken
    // in lexicographic order without losing any packing.
    const long long floor_key =
        same_as_previous
            ? static_cast<long long>(placed[k - 1].x_start) * (machine->length + 1) +
                  placed[k - 1].y_start
            : -1;
    for (const Variant& v : variants[k]) {
      for (int x : x_domains[k]) {
        if (x + v.w > machine->width) continue;
        for (int y : y_domain) {
          if (y + v.l > machine->length) break;
          ++nodes;
          if (out_of_time()) return false;
          const long long key =
              static_cast<long long>(x) * (machine->length + 1) + y;
          if (key < floor_key) continue;
          if (overlaps(x, x + v.w, y, y + v.l)) continue;
          placed.push_back(Placement{part.id, x, x + v.w, y, y + v.l,
                                     v.rotated});
          if (search(k + 1)) return true;
          placed.pop_back();
          if (timed_out) return false;
        }
      }
    }
    return false;
  }
};

}  // namespace

PackResult exact_orthogonal_pack(std::span<const Part> parts,
                                 const Machine& machine,
                                 const PackOptions& options) {
  PackResult result;
  if (parts.empty()) {
    result.verdict = PackVerdict::Feasible;
    return result;
  }

  long long total_area = 0;
  for (const Part& part : parts) total_area += part.area();
  if (total_area > machine.area()) {
    result.verdict = PackVerdict::Infeasible;
    return result;
  }

  std::vector<Part> ordered(parts.begin(), parts.end());
  std::sort(ordered.begin(), ordered.end(), [](const Part& a, const Part& b) {
    if (a.area() != b.area()) return a.area() > b.area();
    return a.id < b.id;
  });

  SearchState state;
  state.parts = ordered;
  state.machine = &machine;
  state.timed_out = options.time_budget_s <= 0.0;
  state.deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(
                             std::clamp(options.time_budget_s, 0.0, 1e9)));

  state.variants.resize(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const Part& p = ordered[i];
    if (p.width <= machine.width && p.length <= machine.length) {
      state.variants[i].push_back({p.width, p.length, false});
    }
    if (p.width != p.length && p.length <= machine.width &&
        p.width <= machine.length) {
      state.variants[i].push_back({p.length, p.width, true});
    }
    if (state.variants[i].empty()) {
      result.verdict = PackVerdict::Infeasible;
      return result;
    }
  }

  if (options.domains == PackOptions::Domains::MeetInTheMiddle) {
    state.x_domains = adjusted_minimal_mim_sets(ordered, machine.width);
    state.y_domain = adjusted_normal_patterns(ordered, machine.length);
  } else {
    std::vector<int> all_x, all_y;
    for (int x = 0; x <= machine.width - 1; ++x) all_x.push_back(x);
    for (int y = 0; y <= machine.length - 1; ++y) all_y.push_back(y);
    state.x_domains.assign(ordered.size(), all_x);
    state.y_domain = all_y;
  }

  const bool found = state.search(0);
  result.nodes = state.nodes;
  if (found) {
    result.verdict = PackVerdict::Feasible;
    result.placements = state.placed;
  } else if (state.timed_out) {
    result.verdict = PackVerdict::Timeout;
  } else {
    result.verdict = PackVerdict::Infeasible;
  }
  return result;
}

std::vector<Part> reduce_infeasible_subset(std::span<const Part> parts,
                                           const Machine& machine,
                                           double per_call_budget_s) {
  std::vector<Part> subset(parts.begin(), parts.end());
  // Ascending area so the least constraining part is dropped first.
  std::sort(subset.begin(), subset.end(), [](const Part& a, const Part& b) {
    if (a.area() != b.area()) return a.area() < b.area();
    return a.id < b.id;
  });

  while (subset.size() > 1) {
    std::vector<Part> candidate(subset.begin() + 1, subset.end());
    PackOptions options;
    options.time_budget_s = per_call_budget_s;
    const PackResult result =
        exact_orthogonal_pack(candidate, machine, options);
    if (result.verdict != PackVerdict::Infeasible) break;
    subset = std::move(candidate);
  }
  return subset;
}

}  // namespace ampack
