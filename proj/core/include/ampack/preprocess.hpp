#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

/// Part-machine pairs where the part does not fit the build envelope even
/// alone. Indexed by position within the instance's part and machine lists.
class MachineExclusions {
 public:
  static MachineExclusions compute(const Instance& instance);

  bool excluded(std::size_t part_index, std::size_t machine_index) const {
    return excluded_[part_index][machine_index];
  }
  std::size_t count() const;

 private:
  std::vector<std::vector<bool>> excluded_;
};

/// Decides whether two parts can share the build area of a machine, trying
/// all rotation pairs with the closed-form side-by-side test. Exact for two
/// rectangles.
bool joint_placement_exists(const Part& a, const Part& b,
                            const Machine& machine);

/// For each machine, the unordered part pairs that fit individually but
/// never jointly. These can be excluded statically; bigger conflicts are
/// discovered dynamically as cuts.
class IncompatiblePairs {
 public:
  static IncompatiblePairs compute(const Instance& instance,
                                   const MachineExclusions& exclusions);

  bool incompatible(std::size_t machine_index, std::size_t part_a,
                    std::size_t part_b) const;
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs(
      std::size_t machine_index) const {
    return pairs_[machine_index];
  }

 private:
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs_;
  std::vector<std::vector<bool>> matrix_;  // flattened pair lookup per machine
  std::size_t part_count_ = 0;
};

/// Per-machine first-fit-decreasing packing of all fitting parts gives a
/// batch count that no optimal solution needs to exceed; the returned budget
/// is the maximum over machines.
int reduce_batch_count(const Instance& instance);

}  // namespace ampack
