#pragma once

#include "maf/solve.hpp"

namespace maf {

/// Duality-based 3-approximation: repeatedly resolves the deterministic
/// active sibling pair of the first forest by a solo cut, a merge, or a
/// subtree cut followed by cutting off both leaves.
SolveResult run_three_approx(const Instance& inst, const SolveOptions& opts = {});

}  // namespace maf
