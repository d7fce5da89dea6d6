#pragma once

#include <span>
#include <vector>

#include "ampack/types.hpp"

namespace ampack {

/// Greedy square decomposition: each rectangle repeatedly sheds its largest
/// inscribed square until nothing is left. Rotation becomes irrelevant for
/// the squares. Returns all side lengths, unsorted multiset semantics.
std::vector<int> cut_into_squares(std::span<const Part> parts);

/// Bin lower bound for packing the parts into copies of the machine's build
/// area, computed on the square decomposition over every integer threshold
/// q in [0, length/2]. A value above 1 certifies that the set cannot form a
/// single batch.
int square_cut_lower_bound(std::span<const Part> parts,
                           const Machine& machine);

}  // namespace ampack
