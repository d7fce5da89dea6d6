#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ampack/preprocess.hpp"
#include "ampack/types.hpp"

namespace ampack {

enum class SortKey {
  DecreasingVolume,
  DecreasingHeight,
  DecreasingArea,
  DecreasingMaxSide,
  Shuffled,
};

struct SortingStrategy {
  SortKey key = SortKey::DecreasingArea;
  std::uint64_t seed = 0;  // used by Shuffled only
};

/// The default strategy set: the four decreasing orders plus one shuffle.
std::vector<SortingStrategy> default_strategies(std::uint64_t seed);

/// Part indices ordered by the strategy; deterministic given key and seed.
std::vector<std::size_t> sorted_part_order(const Instance& instance,
                                           const SortingStrategy& strategy);

/// Workload-balancing machine assignment: a uniform random feasible start,
/// then first-improvement local search over single-part reassignments. The
/// objective treats each machine's parts as one batch. Returns the machine
/// index per part index.
std::vector<std::size_t> assign_parts_to_machines(
    const Instance& instance, const MachineExclusions& exclusions,
    std::span<const std::size_t> ordered_parts, std::uint64_t seed);

/// Shelf first-fit decreasing packing. Parts are oriented width >= length,
/// sorted by decreasing length, and placed left to right on the first shelf
/// tall and wide enough; shelves stack along the y axis. Failure is a value
/// and signals "open a new batch".
std::optional<std::vector<Placement>> shelf_ffd_pack(
    std::span<const Part> parts, const Machine& machine);

/// Greedy batch construction per machine in the given part order: join the
/// first existing batch that still packs (exact pairwise test for two parts,
/// shelf repack otherwise), else open a new batch. Completion times and
/// makespan are filled in.
Solution construct_batches(const Instance& instance,
                           std::span<const std::size_t> machine_of_part,
                           std::span<const std::size_t> ordered_parts);

/// Runs sort-assign-construct once per strategy and keeps the solution with
/// the smallest makespan. The result always passes validate_solution.
Solution start_solution(const Instance& instance,
                        const MachineExclusions& exclusions,
                        std::span<const SortingStrategy> strategies,
                        std::uint64_t seed);

}  // namespace ampack
