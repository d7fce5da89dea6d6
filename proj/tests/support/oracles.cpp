#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_set>

namespace ampack::test {

namespace {

bool grid_pack_search(const std::vector<Part>& parts, std::size_t next,
                      int bin_width, int bin_length,
                      std::vector<Placement>& placed) {
  if (next == parts.size()) return true;
  const Part& part = parts[next];
  const int dims[2][2] = {{part.width, part.length},
                          {part.length, part.width}};
  const int variants = part.width == part.length ? 1 : 2;
  for (int v = 0; v < variants; ++v) {
    const int w = dims[v][0];
    const int l = dims[v][1];
    if (w > bin_width || l > bin_length) continue;
    for (int x = 0; x + w <= bin_width; ++x) {
      for (int y = 0; y + l <= bin_length; ++y) {
        bool overlap = false;
        for (const Placement& p : placed) {
          if (p.x_start < x + w && x < p.x_end && p.y_start < y + l &&
              y < p.y_end) {
            overlap = true;
            break;
          }
        }
        if (overlap) continue;
        placed.push_back({part.id, x, x + w, y, y + l, v == 1});
        if (grid_pack_search(parts, next + 1, bin_width, bin_length, placed)) {
          return true;
        }
        placed.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<Placement>> grid_pack(const std::vector<Part>& parts,
                                                int bin_width,
                                                int bin_length) {
  long long total_area = 0;
  for (const Part& part : parts) {
    total_area += part.area();
  }
  if (total_area > static_cast<long long>(bin_width) * bin_length) {
    return std::nullopt;
  }
  // Larger parts first keeps the search shallow.
  std::vector<Part> ordered = parts;
  std::sort(ordered.begin(), ordered.end(), [](const Part& a, const Part& b) {
    if (a.area() != b.area()) return a.area() > b.area();
    return a.id < b.id;
  });
  std::vector<Placement> placed;
  if (grid_pack_search(ordered, 0, bin_width, bin_length, placed)) {
    return placed;
  }
  return std::nullopt;
}

bool GridPackCache::feasible(const std::vector<Part>& parts, int bin_width,
                             int bin_length) {
  std::vector<long long> key;
  key.reserve(parts.size() + 2);
  key.push_back(bin_width);
  key.push_back(bin_length);
  std::vector<long long> dims;
  for (const Part& part : parts) {
    dims.push_back(static_cast<long long>(part.max_side()) * 1000 +
                   part.min_side());
  }
  std::sort(dims.begin(), dims.end());
  key.insert(key.end(), dims.begin(), dims.end());
  const auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const bool result = grid_pack(parts, bin_width, bin_length).has_value();
  cache_.emplace(std::move(key), result);
  return result;
}

namespace {

void partitions_rec(const std::vector<Part>& parts, std::size_t next,
                    std::vector<std::vector<Part>>& blocks, int& best,
                    GridPackCache& cache, int bin_width, int bin_length) {
  if (static_cast<int>(blocks.size()) >= best) return;
  if (next == parts.size()) {
    best = std::min(best, static_cast<int>(blocks.size()));
    return;
  }
  // Indexed access: recursion grows the block vector, so references into it
  // do not survive the recursive calls.
  const std::size_t block_count = blocks.size();
  for (std::size_t b = 0; b < block_count; ++b) {
    blocks[b].push_back(parts[next]);
    if (cache.feasible(blocks[b], bin_width, bin_length)) {
      partitions_rec(parts, next + 1, blocks, best, cache, bin_width,
                     bin_length);
    }
    blocks[b].pop_back();
  }
  blocks.push_back({parts[next]});
  if (cache.feasible(blocks.back(), bin_width, bin_length)) {
    partitions_rec(parts, next + 1, blocks, best, cache, bin_width,
                   bin_length);
  }
  blocks.pop_back();
}

}  // namespace

int min_bins_with_rotation(const std::vector<Part>& parts, int bin_width,
                           int bin_length) {
  if (parts.empty()) return 0;
  GridPackCache cache;
  int best = static_cast<int>(parts.size());
  std::vector<std::vector<Part>> blocks;
  partitions_rec(parts, 0, blocks, best, cache, bin_width, bin_length);
  return best;
}

std::vector<int> subset_sum_positions(const std::vector<Part>& parts,
                                      int capacity) {
  std::vector<char> reachable(static_cast<std::size_t>(capacity) + 1, 0);
  reachable[0] = 1;
  for (const Part& part : parts) {
    std::vector<char> next = reachable;
    std::vector<int> extents = {part.width};
    if (part.length != part.width) extents.push_back(part.length);
    for (int extent : extents) {
      for (int p = 0; p + extent <= capacity; ++p) {
        if (reachable[p]) next[p + extent] = 1;
      }
    }
    reachable = std::move(next);
  }
  std::vector<int> result;
  for (int p = 0; p <= capacity; ++p) {
    if (reachable[p]) result.push_back(p);
  }
  return result;
}

int bar_covering_integer_optimum(const std::vector<Part>& parts,
                                 const Machine& machine) {
  const std::size_t n = parts.size();
  // Row i is scaled by length_i so both slice kinds cover integrally:
  // a plain slice covers length_i units, a rotated one width_i, and the
  // demand is width_i * length_i.
  std::vector<int> demand(n);
  for (std::size_t i = 0; i < n; ++i) {
    demand[i] = parts[i].width * parts[i].length;
  }

  struct PatternCover {
    std::vector<int> cover;
  };
  std::vector<PatternCover> patterns;
  const int choices = static_cast<int>(std::pow(3.0, static_cast<double>(n)));
  for (int code = 1; code < choices; ++code) {
    int c = code;
    int used_length = 0;
    PatternCover pattern;
    pattern.cover.assign(n, 0);
    bool valid = true;
    for (std::size_t i = 0; i < n && valid; ++i) {
      const int choice = c % 3;
      c /= 3;
      if (choice == 0) continue;
      if (choice == 2 && parts[i].width == parts[i].length) valid = false;
      const int slice_length = choice == 1 ? parts[i].length : parts[i].width;
      const int covered = choice == 1 ? parts[i].length : parts[i].width;
      used_length += slice_length;
      if (used_length > machine.length) valid = false;
      pattern.cover[i] = covered;
    }
    if (valid) patterns.push_back(std::move(pattern));
  }

  auto encode = [&](const std::vector<int>& residual) {
    std::uint64_t key = 0;
    for (int r : residual) key = key * 1297 + static_cast<std::uint64_t>(r);
    return key;
  };

  std::deque<std::pair<std::vector<int>, int>> queue;
  std::unordered_set<std::uint64_t> seen;
  queue.emplace_back(demand, 0);
  seen.insert(encode(demand));
  while (!queue.empty()) {
    auto [residual, used] = queue.front();
    queue.pop_front();
    if (std::all_of(residual.begin(), residual.end(),
                    [](int r) { return r <= 0; })) {
      return used;
    }
    for (const PatternCover& pattern : patterns) {
      std::vector<int> next = residual;
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = std::max(0, next[i] - pattern.cover[i]);
      }
      if (seen.insert(encode(next)).second) {
        queue.emplace_back(std::move(next), used + 1);
      }
    }
  }
  return 0;  // unreachable: singleton patterns always finish the cover
}

namespace {

struct MachinePlan {
  double time = 0.0;
  int batches = 0;
};

/// Cheapest partition of the mask into grid-packable batches on one machine.
MachinePlan best_machine_plan(const Instance& instance, const Machine& machine,
                              unsigned mask,
                              std::vector<std::optional<MachinePlan>>& memo,
                              GridPackCache& cache) {
  if (mask == 0) return {0.0, 0};
  if (memo[mask].has_value()) return *memo[mask];

  MachinePlan best{std::numeric_limits<double>::infinity(), 0};
  const unsigned lowest = mask & (~mask + 1);
  // Enumerate submasks containing the lowest set bit as the next batch.
  for (unsigned sub = mask; sub != 0; sub = (sub - 1) & mask) {
    if ((sub & lowest) == 0) continue;
    std::vector<Part> batch;
    double volume = 0.0;
    int height = 0;
    for (std::size_t i = 0; i < instance.parts.size(); ++i) {
      if (sub & (1u << i)) {
        batch.push_back(instance.parts[i]);
        volume += instance.parts[i].volume;
        height = std::max(height, instance.parts[i].height);
      }
    }
    bool fits = true;
    for (const Part& part : batch) {
      if (part.height > machine.height) fits = false;
    }
    if (!fits || !cache.feasible(batch, machine.width, machine.length)) {
      continue;
    }
    const double batch_time = machine.setup_time + machine.scan_time * volume +
                              machine.recoat_time * height;
    const MachinePlan rest =
        best_machine_plan(instance, machine, mask & ~sub, memo, cache);
    const double total = batch_time + rest.time;
    if (total < best.time - 1e-12 ||
        (total < best.time + 1e-12 && rest.batches + 1 < best.batches)) {
      best = {total, rest.batches + 1};
    }
  }
  memo[mask] = best;
  return best;
}

}  // namespace

ExhaustiveOptimum exhaustive_min_makespan(const Instance& instance,
                                          GridPackCache& cache) {
  const std::size_t n = instance.parts.size();
  const std::size_t machine_count = instance.machines.size();
  std::vector<std::vector<std::optional<MachinePlan>>> memo(
      machine_count,
      std::vector<std::optional<MachinePlan>>(1u << n, std::nullopt));

  ExhaustiveOptimum result;
  result.makespan = std::numeric_limits<double>::infinity();
  result.min_bottleneck_batches = static_cast<int>(n);

  std::vector<unsigned> machine_masks(machine_count, 0);
  std::vector<std::size_t> assignment(n, 0);
  while (true) {
    for (unsigned& mask : machine_masks) mask = 0;
    bool feasible_assignment = true;
    for (std::size_t i = 0; i < n; ++i) {
      machine_masks[assignment[i]] |= 1u << i;
    }
    double worst = 0.0;
    int bottleneck_batches = 0;
    for (std::size_t m = 0; m < machine_count && feasible_assignment; ++m) {
      const MachinePlan plan = best_machine_plan(
          instance, instance.machines[m], machine_masks[m], memo[m], cache);
      if (!std::isfinite(plan.time)) {
        feasible_assignment = false;
        break;
      }
      worst = std::max(worst, plan.time);
      bottleneck_batches = std::max(bottleneck_batches, plan.batches);
    }
    if (feasible_assignment) {
      if (worst < result.makespan - 1e-9) {
        result.makespan = worst;
        result.min_bottleneck_batches = bottleneck_batches;
      } else if (worst <= result.makespan + 1e-9) {
        result.min_bottleneck_batches =
            std::min(result.min_bottleneck_batches, bottleneck_batches);
      }
    }
    std::size_t digit = 0;
    while (digit < n && ++assignment[digit] == machine_count) {
      assignment[digit] = 0;
      ++digit;
    }
    if (digit == n) break;
  }
  return result;
}

Part random_part(Rng& rng, int id, int max_dim) {
  Part part;
  part.id = id;
  part.width = rng.uniform_int(1, max_dim);
  part.length = rng.uniform_int(1, max_dim);
  part.height = rng.uniform_int(1, max_dim);
  part.volume =
      rng.uniform_real(0.3, 1.0) * static_cast<double>(part.box_volume());
  return part;
}

Instance random_small_instance(Rng& rng, int max_parts, int max_machines,
                               int max_dim) {
  Instance instance;
  const int machine_count = rng.uniform_int(1, max_machines);
  for (int m = 0; m < machine_count; ++m) {
    Machine machine;
    machine.id = m;
    machine.width = rng.uniform_int(std::max(2, max_dim - 2), max_dim);
    machine.length = rng.uniform_int(std::max(2, max_dim - 2), max_dim);
    machine.height = rng.uniform_int(std::max(2, max_dim - 2), max_dim);
    machine.setup_time = rng.uniform_real(0.5, 2.0);
    machine.scan_time = rng.uniform_real(0.001, 0.05);
    machine.recoat_time = rng.uniform_real(0.05, 0.4);
    instance.machines.push_back(machine);
  }
  const int part_count = rng.uniform_int(1, max_parts);
  for (int i = 0; i < part_count; ++i) {
    while (true) {
      Part part = random_part(rng, i, max_dim);
      bool fits = false;
      for (const Machine& machine : instance.machines) {
        if (part.height <= machine.height &&
            ((part.width <= machine.width && part.length <= machine.length) ||
             (part.length <= machine.width && part.width <= machine.length))) {
          fits = true;
          break;
        }
      }
      if (fits) {
        instance.parts.push_back(part);
        break;
      }
    }
  }
  instance.meta.name = "random";
  return instance;
}

}  // namespace ampack::test
