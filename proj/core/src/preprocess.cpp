#include "ampack/preprocess.hpp"

#include <algorithm>

#include "ampack/heuristics.hpp"
#include "ampack/model.hpp"

namespace ampack {

MachineExclusions MachineExclusions::compute(const Instance& instance) {
  MachineExclusions result;
  result.excluded_.assign(instance.parts.size(),
                          std::vector<bool>(instance.machines.size(), false));
  for (std::size_t i = 0; i < instance.parts.size(); ++i) {
    for (std::size_t m = 0; m < instance.machines.size(); ++m) {
      result.excluded_[i][m] =
          !part_fits_machine(instance.parts[i], instance.machines[m]);
    }
  }
  return result;
}

std::size_t MachineExclusions::count() const {
  std::size_t total = 0;
  for (const auto& row : excluded_) {
    for (bool b : row) total += b ? 1 : 0;
  }
  return total;
}

bool joint_placement_exists(const Part& a, const Part& b,
                            const Machine& machine) {
  const int dims_a[2][2] = {{a.width, a.length}, {a.length, a.width}};
  const int dims_b[2][2] = {{b.width, b.length}, {b.length, b.width}};
  const int variants_a = a.width == a.length ? 1 : 2;
  const int variants_b = b.width == b.length ? 1 : 2;
  for (int ra = 0; ra < variants_a; ++ra) {
    for (int rb = 0; rb < variants_b; ++rb) {
      const int wa = dims_a[ra][0], la = dims_a[ra][1];
      const int wb = dims_b[rb][0], lb = dims_b[rb][1];
      const bool side_by_side =
          wa + wb <= machine.width && std::max(la, lb) <= machine.length;
      const bool stacked =
          la + lb <= machine.length && std::max(wa, wb) <= machine.width;
      if (side_by_side || stacked) return true;
    }
  }
  return false;
}

IncompatiblePairs IncompatiblePairs::compute(
    const Instance& instance, const MachineExclusions& exclusions) {
  IncompatiblePairs result;
  const std::size_t n = instance.parts.size();
  result.part_count_ = n;
  result.pairs_.resize(instance.machines.size());
  result.matrix_.assign(instance.machines.size(),
                        std::vector<bool>(n * n, false));
  for (std::size_t m = 0; m < instance.machines.size(); ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      if (exclusions.excluded(i, m)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (exclusions.excluded(j, m)) continue;
        if (!joint_placement_exists(instance.parts[i], instance.parts[j],
                                    instance.machines[m])) {
          result.pairs_[m].emplace_back(i, j);
          result.matrix_[m][i * n + j] = true;
          result.matrix_[m][j * n + i] = true;
        }
      }
    }
  }
  return result;
}

bool IncompatiblePairs::incompatible(std::size_t machine_index,
                                     std::size_t part_a,
                                     std::size_t part_b) const {
  return matrix_[machine_index][part_a * part_count_ + part_b];
}

int reduce_batch_count(const Instance& instance) {
  int overall = 1;
  for (const Machine& machine : instance.machines) {
    std::vector<Part> fitting;
    for (const Part& part : instance.parts) {
      if (part_fits_machine(part, machine)) fitting.push_back(part);
    }
    if (fitting.empty()) continue;

    // Rotate so width >= length, sort by decreasing width; ties broken by
    // decreasing length then id for a platform-independent order.
    for (Part& part : fitting) {
      if (part.width < part.length) std::swap(part.width, part.length);
    }
    std::sort(fitting.begin(), fitting.end(), [](const Part& a, const Part& b) {
      if (a.width != b.width) return a.width > b.width;
      if (a.length != b.length) return a.length > b.length;
      return a.id < b.id;
    });

    std::vector<std::vector<Part>> batches;
    for (const Part& part : fitting) {
      bool placed = false;
      for (std::vector<Part>& batch : batches) {
        batch.push_back(part);
        if (shelf_ffd_pack(batch, machine).has_value()) {
          placed = true;
          break;
        }
        batch.pop_back();
      }
      if (!placed) batches.push_back({part});
    }
    overall = std::max(overall, static_cast<int>(batches.size()));
  }
  return overall;
}

}  // namespace ampack
