#include "maf/approx3.hpp"

#include <algorithm>

#include "maf/internal.hpp"

namespace maf {

SolveResult run_three_approx(const Instance& inst, const SolveOptions& opts) {
  SolverState state(inst);
  while (state.active_count() >= 2) {
    state.begin_iteration();
    auto pair = detail::find_active_sibling_pair(state, Tree::T1);
    if (!pair) throw InternalError("no active sibling pair in the first forest");
    auto [u, v] = *pair;

    if (detail::alone_in_tree(state, Tree::T2, u) ||
        detail::alone_in_tree(state, Tree::T2, v)) {
      LabelId x = detail::alone_in_tree(state, Tree::T2, u) ? u : v;
      state.cut_off(Tree::T1, {&x, 1}, CutKind::CutSingleton);
      state.deactivate_cut(x);
      state.set_deactivated_on_last_event(x);
      state.dual().add_leaf(x, 1);
    } else if (state.active_siblings(Tree::T2, u, v)) {
      state.merge_active(u, v);
    } else {
      NodeId nu = state.leaf_node(Tree::T2, u);
      NodeId nv = state.leaf_node(Tree::T2, v);
      if (state.forest(Tree::T2).same_component(nu, nv) &&
          detail::has_outside_witness(state, u, v)) {
        detail::cut_active_subtree_between(state, u, v);
      }
      NodeId lca1 = inst.tree(Tree::T1).lca(state.leaf_node(Tree::T1, u),
                                            state.leaf_node(Tree::T1, v));
      for (LabelId x : {u, v}) {
        state.cut_off(Tree::T2, {&x, 1}, CutKind::ProcedureCut, u, v);
        state.cut_off(Tree::T1, {&x, 1}, CutKind::ProcedureCut, u, v);
        state.deactivate_cut(x);
        state.set_deactivated_on_last_event(x);
        state.dual().add_leaf(x, 1);
      }
      state.dual().add_internal(Tree::T1, lca1, -1);
    }
    state.refresh_delta_d();
    if (opts.iteration_hook) opts.iteration_hook(state);
  }
  if (state.active_count() == 1) {
    LabelId last = state.active_labels().front();
    state.deactivate_cut(last);
    state.dual().add_leaf(last, 1);
  }
  return finish_solve(state, "three", 1, 3, opts);
}

}  // namespace maf
