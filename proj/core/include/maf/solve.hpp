#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "maf/dual.hpp"
#include "maf/solver_state.hpp"

namespace maf {

struct SolveOptions {
  /// Exhaustive dual feasibility is asserted at termination when the label
  /// count is at most this; negative disables.
  int exhaustive_verify_cap = 10;
  /// Called after each completed while-iteration.
  std::function<void(const SolverState&)> iteration_hook;
};

struct SolveResult {
  std::string algorithm;
  AgreementForest forest;
  DualCertificate dual;
  StepAccounting accounting;
  std::vector<CutEvent> trace;
  std::array<std::vector<NodeId>, 2> deleted_edges;
};

/// Shared termination work: extraction, self checks, result assembly.
SolveResult finish_solve(SolverState& state, const char* algorithm,
                         int ratio_num, int ratio_den,
                         const SolveOptions& opts);

}  // namespace maf
