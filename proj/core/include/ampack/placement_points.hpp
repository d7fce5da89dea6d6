#pragma once

#include <span>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

enum class Axis { X, Y };

/// The distinct extents a part can expose along an axis: one value for a
/// square, otherwise the two sides.
std::vector<int> rotation_extents(const Part& part);

/// Positions in [0, capacity] reachable as sums of per-part extents where
/// each part contributes at most one of its rotation extents. Boolean-table
/// sweep over parts, then rotations, with positions descending; each part is
/// applied against the table state from before that part, so its two
/// rotations can never stack. Always contains 0. Returned sorted ascending.
std::vector<int> adjusted_normal_patterns(std::span<const Part> parts,
                                          int capacity);

/// Minimal meet-in-the-middle placement points per part: left-anchored
/// normal positions below a threshold plus mirrored right-anchored points at
/// or above it, the threshold chosen to minimize the total domain size. For
/// any feasible packing there is an equivalent one with every start
/// coordinate of part i drawn from its set.
std::vector<std::vector<int>> adjusted_minimal_mim_sets(
    std::span<const Part> parts, int capacity);

}  // namespace ampack
