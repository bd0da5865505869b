#pragma once

#include <span>
#include <vector>

#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"

namespace cartdec {

// Finest G-invariant partition with all of `seed` in one block.
Partition minimal_block_system(const PermGroup& g, std::span<const Point> seed);

// Minimal nontrivial block systems of a transitive group (empty when
// primitive). Throws InputError when g is intransitive.
std::vector<Partition> block_systems(const PermGroup& g);

// Every nontrivial block system (neither singletons nor one block), sorted.
std::vector<Partition> all_block_systems(const PermGroup& g);

// Partition into the translates of `block` under g (g transitive, block a
// block of imprimitivity). Throws InputError if the translates overlap.
Partition block_system_from_block(const PermGroup& g, std::span<const Point> block);

// Permutation induced by x on the blocks of an x-invariant partition.
Permutation action_on_blocks(const Partition& p, const Permutation& x);
PermGroup action_on_blocks(const Partition& p, const PermGroup& g);

}  // namespace cartdec
