#include "maf/solve.hpp"

#include "maf/exact.hpp"

namespace maf {

SolveResult finish_solve(SolverState& state, const char* algorithm,
                         int ratio_num, int ratio_den,
                         const SolveOptions& opts) {
  state.refresh_delta_d();
  AgreementForest forest = extract_forest(state);
  if (!verify_agreement_forest(state.instance(), forest.blocks)) {
    throw InternalError("solver produced an infeasible forest");
  }
  if (!lemma_ratio_check(state, ratio_num, ratio_den)) {
    throw InternalError("terminal dual below the guaranteed fraction");
  }
  if (opts.exhaustive_verify_cap >= 0 &&
      state.instance().label_count() <= opts.exhaustive_verify_cap) {
    if (!verify_dual_feasibility(state, opts.exhaustive_verify_cap)) {
      throw InternalError("terminal dual solution infeasible");
    }
  }
  SolveResult res;
  res.algorithm = algorithm;
  res.forest = std::move(forest);
  res.dual.y_leaf = state.dual().y_leaf;
  res.dual.y_internal = state.dual().y_internal;
  res.dual.objective = dual_objective(state);
  res.accounting = state.accounting();
  res.trace = state.trace();
  res.deleted_edges[0] = state.forest(Tree::T1).deleted_edges();
  res.deleted_edges[1] = state.forest(Tree::T2).deleted_edges();
  if (res.accounting.delta_p != static_cast<int>(res.deleted_edges[1].size())) {
    throw InternalError("cut accounting out of sync with the forest");
  }
  return res;
}

}  // namespace maf
