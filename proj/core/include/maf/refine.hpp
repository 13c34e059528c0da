#pragma once

#include "maf/exact.hpp"
#include "maf/solver_state.hpp"

namespace maf {

/// Greedy post-processing: repeatedly replaces two blocks by their union
/// whenever the result is still an agreement forest, scanning block pairs in
/// a fixed order and restarting after every committed merge.
AgreementForest greedy_merge(const Instance& inst, const AgreementForest& forest);

}  // namespace maf
