#include "ampack/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ampack/model.hpp"
#include "ampack/rng.hpp"

namespace ampack {

std::vector<SortingStrategy> default_strategies(std::uint64_t seed) {
  return {
      {SortKey::DecreasingVolume, 0},
      {SortKey::DecreasingHeight, 0},
      {SortKey::DecreasingArea, 0},
      {SortKey::DecreasingMaxSide, 0},
      {SortKey::Shuffled, seed},
  };
}

std::vector<std::size_t> sorted_part_order(const Instance& instance,
                                           const SortingStrategy& strategy) {
  std::vector<std::size_t> order(instance.parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  if (strategy.key == SortKey::Shuffled) {
    Rng rng(strategy.seed);
    rng.shuffle(order);
    return order;
  }

  auto value = [&](std::size_t i) -> double {
    const Part& part = instance.parts[i];
    switch (strategy.key) {
      case SortKey::DecreasingVolume:
        return part.volume;
      case SortKey::DecreasingHeight:
        return part.height;
      case SortKey::DecreasingArea:
        return static_cast<double>(part.area());
      case SortKey::DecreasingMaxSide:
        return part.max_side();
      case SortKey::Shuffled:
        break;
    }
    return 0.0;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = value(a), vb = value(b);
    if (va != vb) return va > vb;
    return instance.parts[a].id < instance.parts[b].id;
  });
  return order;
}

namespace {

struct MachineLoad {
  double volume = 0.0;
  int count = 0;
};

double load_time(const Instance& instance, std::size_t machine_index,
                 const MachineLoad& load, int max_height) {
  if (load.count == 0) return 0.0;
  const Machine& m = instance.machines[machine_index];
  return m.setup_time + m.scan_time * load.volume +
         m.recoat_time * max_height;
}

}  // namespace

std::vector<std::size_t> assign_parts_to_machines(
    const Instance& instance, const MachineExclusions& exclusions,
    std::span<const std::size_t> ordered_parts, std::uint64_t seed) {
  const std::size_t machine_count = instance.machines.size();
  std::vector<std::vector<std::size_t>> feasible(instance.parts.size());
  for (std::size_t i = 0; i < instance.parts.size(); ++i) {
    for (std::size_t m = 0; m < machine_count; ++m) {
      if (!exclusions.excluded(i, m)) feasible[i].push_back(m);
    }
    if (feasible[i].empty()) {
      throw std::invalid_argument("part fits no machine: part index " +
                                  std::to_string(i));
    }
  }

  Rng rng(seed);
  std::vector<std::size_t> assignment(instance.parts.size());
  for (std::size_t i : ordered_parts) {
    const std::vector<std::size_t>& options = feasible[i];
    assignment[i] =
        options[rng.uniform_int(0, static_cast<int>(options.size()) - 1)];
  }

  std::vector<MachineLoad> loads(machine_count);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    loads[assignment[i]].volume += instance.parts[i].volume;
    ++loads[assignment[i]].count;
  }
  auto machine_max_height = [&](std::size_t m) {
    int h = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (assignment[i] == m) h = std::max(h, instance.parts[i].height);
    }
    return h;
  };
  auto objective = [&]() {
    double worst = 0.0;
    for (std::size_t m = 0; m < machine_count; ++m) {
      worst = std::max(worst,
                       load_time(instance, m, loads[m], machine_max_height(m)));
    }
    return worst;
  };

  double current = objective();
  for (int sweep = 0; sweep < 1000; ++sweep) {
    bool improved = false;
    for (std::size_t i : ordered_parts) {
      const std::size_t from = assignment[i];
      for (std::size_t to : feasible[i]) {
        if (to == from) continue;
        assignment[i] = to;
        loads[from].volume -= instance.parts[i].volume;
        --loads[from].count;
        loads[to].volume += instance.parts[i].volume;
        ++loads[to].count;
        const double candidate = objective();
        if (candidate < current - 1e-12) {
          current = candidate;
          improved = true;
          break;  // first improvement; i stays on its new machine
        }
        assignment[i] = from;
        loads[to].volume -= instance.parts[i].volume;
        --loads[to].count;
        loads[from].volume += instance.parts[i].volume;
        ++loads[from].count;
      }
    }
    if (!improved) break;
  }
  return assignment;
}

namespace {

struct Oriented {
  int w;
  int l;
  bool rotated;
};

Oriented widest_orientation(const Part& part) {
  if (part.width >= part.length) return {part.width, part.length, false};
  return {part.length, part.width, true};
}

/// Any orientation in which the part fits the machine, plain first.
std::optional<Oriented> fitting_orientation(const Part& part,
                                            const Machine& machine) {
  if (part.width <= machine.width && part.length <= machine.length) {
    return Oriented{part.width, part.length, false};
  }
  if (part.length <= machine.width && part.width <= machine.length) {
    return Oriented{part.length, part.width, true};
  }
  return std::nullopt;
}

std::optional<std::vector<Placement>> pair_placement(const Part& a,
                                                     const Part& b,
                                                     const Machine& machine) {
  const Oriented va[2] = {{a.width, a.length, false},
                          {a.length, a.width, true}};
  const Oriented vb[2] = {{b.width, b.length, false},
                          {b.length, b.width, true}};
  const int na = a.width == a.length ? 1 : 2;
  const int nb = b.width == b.length ? 1 : 2;
  for (int ia = 0; ia < na; ++ia) {
    for (int ib = 0; ib < nb; ++ib) {
      const Oriented& oa = va[ia];
      const Oriented& ob = vb[ib];
      if (oa.w + ob.w <= machine.width &&
          std::max(oa.l, ob.l) <= machine.length) {
        return std::vector<Placement>{
            {a.id, 0, oa.w, 0, oa.l, oa.rotated},
            {b.id, oa.w, oa.w + ob.w, 0, ob.l, ob.rotated}};
      }
      if (oa.l + ob.l <= machine.length &&
          std::max(oa.w, ob.w) <= machine.width) {
        return std::vector<Placement>{
            {a.id, 0, oa.w, 0, oa.l, oa.rotated},
            {b.id, 0, ob.w, oa.l, oa.l + ob.l, ob.rotated}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Placement>> shelf_ffd_pack(
    std::span<const Part> parts, const Machine& machine) {
  struct Item {
    const Part* part;
    Oriented oriented;
  };
  std::vector<Item> items;
  items.reserve(parts.size());
  for (const Part& part : parts) {
    items.push_back({&part, widest_orientation(part)});
  }
  // Decreasing shelf-height dimension (the short side after orienting).
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.oriented.l != b.oriented.l) return a.oriented.l > b.oriented.l;
    if (a.oriented.w != b.oriented.w) return a.oriented.w > b.oriented.w;
    return a.part->id < b.part->id;
  });

  struct Shelf {
    int y;
    int height;
    int used_width;
  };
  std::vector<Shelf> shelves;
  int next_shelf_y = 0;
  std::vector<Placement> placements;
  placements.reserve(parts.size());

  for (const Item& item : items) {
    const int w = item.oriented.w;
    const int l = item.oriented.l;
    bool placed = false;
    for (Shelf& shelf : shelves) {
      if (shelf.height >= l && shelf.used_width + w <= machine.width) {
        placements.push_back({item.part->id, shelf.used_width,
                              shelf.used_width + w, shelf.y, shelf.y + l,
                              item.oriented.rotated});
        shelf.used_width += w;
        placed = true;
        break;
      }
    }
    if (placed) continue;
    if (next_shelf_y + l <= machine.length && w <= machine.width) {
      shelves.push_back({next_shelf_y, l, w});
      placements.push_back({item.part->id, 0, w, next_shelf_y,
                            next_shelf_y + l, item.oriented.rotated});
      next_shelf_y += l;
    } else {
      return std::nullopt;
    }
  }
  return placements;
}

Solution construct_batches(const Instance& instance,
                           std::span<const std::size_t> machine_of_part,
                           std::span<const std::size_t> ordered_parts) {
  struct OpenBatch {
    std::vector<std::size_t> members;
    std::vector<Placement> placements;
  };
  std::vector<std::vector<OpenBatch>> per_machine(instance.machines.size());

  for (std::size_t part_index : ordered_parts) {
    const std::size_t m = machine_of_part[part_index];
    const Machine& machine = instance.machines[m];
    const Part& part = instance.parts[part_index];
    bool placed = false;
    for (OpenBatch& batch : per_machine[m]) {
      std::optional<std::vector<Placement>> attempt;
      if (batch.members.size() == 1) {
        attempt =
            pair_placement(instance.parts[batch.members[0]], part, machine);
      } else {
        std::vector<Part> members;
        members.reserve(batch.members.size() + 1);
        for (std::size_t j : batch.members) members.push_back(instance.parts[j]);
        members.push_back(part);
        attempt = shelf_ffd_pack(members, machine);
      }
      if (attempt.has_value()) {
        batch.members.push_back(part_index);
        batch.placements = std::move(*attempt);
        placed = true;
        break;
      }
    }
    if (!placed) {
      const std::optional<Oriented> orientation =
          fitting_orientation(part, machine);
      if (!orientation.has_value()) {
        throw std::invalid_argument("part assigned to a machine it cannot fit");
      }
      OpenBatch batch;
      batch.members.push_back(part_index);
      batch.placements.push_back({part.id, 0, orientation->w, 0,
                                  orientation->l, orientation->rotated});
      per_machine[m].push_back(std::move(batch));
    }
  }

  Solution solution;
  solution.machines.resize(instance.machines.size());
  for (std::size_t m = 0; m < instance.machines.size(); ++m) {
    MachineSchedule& schedule = solution.machines[m];
    schedule.machine_id = instance.machines[m].id;
    int index = 1;
    for (OpenBatch& open : per_machine[m]) {
      Batch batch;
      batch.machine_id = instance.machines[m].id;
      batch.index = index++;
      batch.placements = std::move(open.placements);
      schedule.batches.push_back(std::move(batch));
    }
    schedule.completion_times =
        completion_times(instance, instance.machines[m], schedule.batches);
  }
  solution.makespan = makespan(solution);
  return solution;
}

Solution start_solution(const Instance& instance,
                        const MachineExclusions& exclusions,
                        std::span<const SortingStrategy> strategies,
                        std::uint64_t seed) {
  if (strategies.empty()) {
    throw std::invalid_argument("start_solution needs at least one strategy");
  }
  Solution best;
  double best_makespan = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const std::vector<std::size_t> order =
        sorted_part_order(instance, strategies[s]);
    const std::vector<std::size_t> assignment =
        assign_parts_to_machines(instance, exclusions, order, Rng::mix(seed, s));
    Solution candidate = construct_batches(instance, assignment, order);
    if (candidate.makespan < best_makespan) {
      best_makespan = candidate.makespan;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace ampack
