#pragma once

#include <span>
#include <vector>

#include "maf/instance.hpp"
#include "maf/types.hpp"

namespace maf {

/// True iff the partition is a feasible agreement forest: it covers the
/// label set exactly once, every block is compatible, and within each tree
/// the Steiner node sets of distinct blocks are pairwise disjoint.
bool verify_agreement_forest(const Instance& inst,
                             const std::vector<std::vector<LabelId>>& blocks);

struct ExactResult {
  int value = 0;
  std::vector<std::vector<LabelId>> witness;  // sorted blocks, sorted labels
};

/// Minimum agreement-forest value by enumerating set partitions in
/// restricted-growth order with incremental pruning. The witness is the
/// lexicographically least restricted-growth encoding among the optima.
ExactResult exact_maf(const Instance& inst, int cap = 10);

}  // namespace maf
