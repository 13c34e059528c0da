#pragma once

#include <cstdint>

#include "maf/instance.hpp"
#include "maf/tree.hpp"

namespace maf {

/// Random rooted binary tree over labels L0..L{n-1}: the left subtree size
/// is uniform in [1, n-1], its label subset uniform, both sides recursive.
LabeledTree random_tree(int n, std::uint64_t seed);

/// Applies k random subtree prune-and-regraft operations. The pruned root is
/// uniform over non-root nodes; the regraft edge is uniform over the edges
/// of the tree left after pruning and suppression, excluding the edge whose
/// split would recreate the original attachment.
LabeledTree random_spr(const LabeledTree& tree, int k, std::uint64_t seed);

struct GeneratedInstance {
  Instance instance;
  int upper_bound;  // edit count; bounds the optimum of the rho-augmented form
};

/// Instance with a known optimum upper bound: a random tree paired with a
/// k-edit copy of itself, sub-seeds derived deterministically from `seed`.
GeneratedInstance make_instance(int n, int k, std::uint64_t seed);

}  // namespace maf
