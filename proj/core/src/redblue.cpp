#include "maf/redblue.hpp"

#include <algorithm>
#include <array>

#include "maf/internal.hpp"

namespace maf {

namespace {

using detail::alone_in_tree;
using detail::cut_leaf;
using detail::find_active_sibling_pair;

std::vector<LabelId> active_members(const SolverState& state,
                                    std::span<const LabelId> set) {
  std::vector<LabelId> out;
  for (LabelId l : set) {
    if (state.is_active(l)) out.push_back(l);
  }
  return out;
}

/// Cut `x` off in the second forest and the first forest, deactivate it and
/// raise its leaf value. The second-forest cut is skipped when `x` is alone
/// in its tree there.
void cut_off_both_and_deactivate(SolverState& state, LabelId x, CutKind kind,
                                 bool skip_solo_f2, LabelId actor_u = kNoLabel,
                                 LabelId actor_v = kNoLabel) {
  if (!skip_solo_f2 || !alone_in_tree(state, Tree::T2, x)) {
    cut_leaf(state, Tree::T2, x, kind, actor_u, actor_v);
  }
  cut_leaf(state, Tree::T1, x, kind, actor_u, actor_v);
  state.deactivate_cut(x);
  state.set_deactivated_on_last_event(x);
  state.dual().add_leaf(x, 1);
}

}  // namespace

const char* to_string(PairOutcomeKind k) {
  switch (k) {
    case PairOutcomeKind::CrossTreeFinalCut: return "final_cut";
    case PairOutcomeKind::CrossTreeSoloCut: return "solo_cut";
    case PairOutcomeKind::PlainMerge: return "merge";
    case PairOutcomeKind::MergeAfterCut: return "merge_after_cut";
    case PairOutcomeKind::CutWThenCutU: return "cut_w_then_cut_u";
  }
  return "?";
}

void preprocess(SolverState& state) {
  while (true) {
    // Lexicographically least pair that is an active sibling pair in both
    // forests; the smaller leaf is merged into the larger.
    std::optional<std::pair<LabelId, LabelId>> pair;
    for (LabelId u = 0; u < state.instance().label_count() && !pair; ++u) {
      if (!state.is_active(u)) continue;
      auto p1 = state.parent_of_active(Tree::T1, u);
      if (!p1 || state.active_under(Tree::T1, *p1) != 2) continue;
      auto both = state.active_leaves_under(Tree::T1, *p1);
      LabelId v = both[0] == u ? both[1] : both[0];
      auto p2u = state.parent_of_active(Tree::T2, u);
      auto p2v = state.parent_of_active(Tree::T2, v);
      if (p2u && p2v && *p2u == *p2v) pair = {std::min(u, v), std::max(u, v)};
    }
    if (pair) {
      state.merge_active(pair->first, pair->second);
      continue;
    }
    LabelId solo = kNoLabel;
    for (LabelId u = 0; u < state.instance().label_count(); ++u) {
      if (state.is_active(u) && alone_in_tree(state, Tree::T2, u)) {
        solo = u;
        break;
      }
    }
    if (solo == kNoLabel) break;
    if (state.active_count() > 1) {
      cut_leaf(state, Tree::T1, solo, CutKind::CutSingleton);
      state.deactivate_cut(solo);
      state.set_deactivated_on_last_event(solo);
    } else {
      state.deactivate_cut(solo);
    }
    state.dual().add_leaf(solo, 1);
  }
  state.refresh_delta_d();
}

ResolvePairOutcome resolve_pair(SolverState& state, LabelId u, LabelId v) {
  if (!state.active_siblings(Tree::T1, u, v)) {
    throw NotSiblingsInF1("resolve_pair requires first-forest active siblings");
  }
  const Instance& inst = state.instance();
  const ForestView& f2 = state.forest(Tree::T2);
  size_t trace_mark = state.trace().size();
  ResolvePairOutcome out;

  NodeId nu = state.leaf_node(Tree::T2, u);
  NodeId nv = state.leaf_node(Tree::T2, v);
  if (!f2.same_component(nu, nv)) {
    // Relabel so the original lca of the pair is not in u's tree; when it is
    // in neither tree the smaller label keeps the u role.
    NodeId lca2 = inst.tree(Tree::T2).lca(nu, nv);
    if (f2.same_component(lca2, nu)) std::swap(u, v);
    if (!alone_in_tree(state, Tree::T2, u)) {
      cut_leaf(state, Tree::T2, u, CutKind::FinalCut, u, v);
      cut_leaf(state, Tree::T1, u, CutKind::FinalCut, u, v);
      state.deactivate_cut(u);
      state.set_deactivated_on_last_event(u);
      state.dual().add_leaf(u, 1);
      ++state.accounting().starred_ops;
      out.kind = PairOutcomeKind::CrossTreeFinalCut;
    } else {
      cut_leaf(state, Tree::T1, u, CutKind::CutSingleton, u, v);
      state.deactivate_cut(u);
      state.set_deactivated_on_last_event(u);
      state.dual().add_leaf(u, 1);
      out.kind = PairOutcomeKind::CrossTreeSoloCut;
    }
  } else if (state.active_siblings(Tree::T2, u, v)) {
    state.merge_active(u, v);
    out.kind = PairOutcomeKind::PlainMerge;
  } else {
    // Relabel so there is an active subtree strictly below the pair's lca on
    // u's side; when both sides qualify the smaller label keeps the u role.
    NodeId lca2 = inst.tree(Tree::T2).lca(nu, nv);
    auto pu = state.parent_of_active(Tree::T2, u);
    auto pv = state.parent_of_active(Tree::T2, v);
    if (!pu || !pv) throw InternalError("pair without second-forest parents");
    if (*pu == lca2) {
      if (*pv == lca2) throw InternalError("non-siblings with bare lca");
      std::swap(u, v);
    }
    detail::cut_active_subtree_between(state, u, v);
    if (state.active_siblings(Tree::T2, u, v)) {
      state.merge_active(u, v);
      state.dual().add_leaf(u, 1);
      ++state.accounting().starred_ops;
      out.kind = PairOutcomeKind::MergeAfterCut;
    } else {
      cut_leaf(state, Tree::T2, u, CutKind::CutU, u, v);
      cut_leaf(state, Tree::T1, u, CutKind::CutU, u, v);
      state.deactivate_cut(u);
      state.set_deactivated_on_last_event(u);
      state.dual().add_leaf(u, 1);
      out.kind = PairOutcomeKind::CutWThenCutU;
    }
  }
  out.deactivated = u;
  out.cut_events.assign(state.trace().begin() + trace_mark,
                        state.trace().end());
  state.refresh_delta_d();
  return out;
}

SetOutcome resolve_set(SolverState& state, std::span<const LabelId> r) {
  std::vector<LabelId> act = active_members(state, r);
  if (act.size() < 2) {
    throw InvalidSize("resolve_set needs at least two active leaves");
  }
  NodeId lca1_r = state.lca_of_labels(Tree::T1, act);
  state.dual().add_internal(Tree::T1, lca1_r, -1);
  int starred_base = state.accounting().starred_ops;

  while (active_members(state, r).size() >= 3) {
    auto pair = find_active_sibling_pair(state, Tree::T1, r);
    if (!pair) throw InternalError("no sibling pair inside the set");
    resolve_pair(state, pair->first, pair->second);
  }
  act = active_members(state, r);
  LabelId hu = act[0], hv = act[1];

  if (state.active_siblings(Tree::T2, hu, hv)) {
    state.merge_active(hu, hv);
    state.dual().add_leaf(hu, 1);
    state.refresh_delta_d();
    return SetOutcome::Success;
  }
  bool same_tree = state.forest(Tree::T2).same_component(
      state.leaf_node(Tree::T2, hu), state.leaf_node(Tree::T2, hv));
  if (!same_tree || !detail::has_outside_witness(state, hu, hv)) {
    cut_off_both_and_deactivate(state, hu, CutKind::ProcedureCut, true);
    cut_off_both_and_deactivate(state, hv, CutKind::ProcedureCut, true);
    state.refresh_delta_d();
    return SetOutcome::Success;
  }
  if (state.accounting().starred_ops > starred_base) {
    auto po = resolve_pair(state, hu, hv);
    LabelId last = po.deactivated == hu ? hv : hu;
    cut_off_both_and_deactivate(state, last, CutKind::ProcedureCut, false);
    state.refresh_delta_d();
    return SetOutcome::Success;
  }
  return SetOutcome::Fail;
}

void handle_triplet_one_tree(SolverState& state, LabelId r1, LabelId r2,
                             LabelId b) {
  const Instance& inst = state.instance();
  // Relabel so that b and r1 are the near pair in the second tree.
  switch (inst.orient(Tree::T2, b, r1, r2)) {
    case TripletOrientation::UV_W: break;
    case TripletOrientation::UW_V: std::swap(r1, r2); break;
    case TripletOrientation::VW_U:
      throw InternalError("triplet is consistent at the one-tree handler");
  }
  NodeId lca2 = inst.tree(Tree::T2).lca(state.leaf_node(Tree::T2, r1),
                                        state.leaf_node(Tree::T2, b));
  auto w = state.active_leaves_under(Tree::T2, lca2);
  state.cut_off(Tree::T2, w, CutKind::ProcedureCut);
  state.dual().add_internal(Tree::T2, lca2, -1);

  cut_off_both_and_deactivate(state, r2, CutKind::ProcedureCut, false);
  if (state.active_siblings(Tree::T2, r1, b)) {
    state.merge_active(b, r1);
    state.dual().add_leaf(b, 1);
  } else {
    cut_off_both_and_deactivate(state, r1, CutKind::ProcedureCut, false);
    cut_off_both_and_deactivate(state, b, CutKind::ProcedureCut, false);
  }
  state.refresh_delta_d();
}

void handle_triplet_three_trees(SolverState& state, LabelId r1, LabelId r2,
                                LabelId b) {
  cut_off_both_and_deactivate(state, b, CutKind::ProcedureCut, false);
  bool r1_solo = alone_in_tree(state, Tree::T2, r1);
  cut_off_both_and_deactivate(state, r1, CutKind::ProcedureCut, true);
  bool r2_solo = alone_in_tree(state, Tree::T2, r2);
  cut_off_both_and_deactivate(state, r2, CutKind::ProcedureCut, true);
  if (r1_solo && r2_solo && state.starred_this_iteration() == 0) {
    retroactive_merge(state, r2);
  }
  state.refresh_delta_d();
}

void handle_triplet_two_trees(SolverState& state, LabelId r1, LabelId r2,
                              LabelId b) {
  const ForestView& f2 = state.forest(Tree::T2);
  std::array<LabelId, 3> leaves{r1, r2, b};
  std::array<NodeId, 3> roots;
  for (int i = 0; i < 3; ++i) {
    roots[i] = f2.component_root(state.leaf_node(Tree::T2, leaves[i]));
  }
  int alone = -1;
  for (int i = 0; i < 3; ++i) {
    if (roots[i] != roots[(i + 1) % 3] && roots[i] != roots[(i + 2) % 3]) {
      alone = i;
    }
  }
  if (alone < 0) throw InternalError("two-tree handler without a lone leaf");
  LabelId hu = leaves[alone];
  LabelId v1 = leaves[(alone + 1) % 3];
  LabelId v2 = leaves[(alone + 2) % 3];
  if (v1 > v2) std::swap(v1, v2);

  bool hu_solo = alone_in_tree(state, Tree::T2, hu);
  if (hu_solo) {
    cut_leaf(state, Tree::T1, hu, CutKind::ProcedureCut);
    state.deactivate_cut(hu);
    state.set_deactivated_on_last_event(hu);
    state.dual().add_leaf(hu, 1);
  } else {
    cut_off_both_and_deactivate(state, hu, CutKind::ProcedureCut, false);
  }

  if (state.active_siblings(Tree::T2, v1, v2)) {
    if (v1 != b && v2 != b) {
      throw InternalError("sibling survivors without the blue leaf");
    }
    LabelId live = v1 == b ? v2 : v1;
    state.merge_active(b, live);
    state.dual().add_leaf(b, 1);
  } else {
    auto po = resolve_pair(state, v1, v2);
    LabelId last = po.deactivated == v1 ? v2 : v1;
    cut_off_both_and_deactivate(state, last, CutKind::ProcedureCut, false);
    if (hu_solo && state.starred_this_iteration() == 0) {
      retroactive_merge(state, hu);
    }
  }
  state.refresh_delta_d();
}

void retroactive_merge(SolverState& state, LabelId target) {
  const CutEvent* ev = nullptr;
  for (const CutEvent& e : state.trace()) {
    if (e.iteration != state.iteration() || e.kind != CutKind::CutW) continue;
    if (!std::binary_search(e.cut_set.begin(), e.cut_set.end(), target)) {
      continue;
    }
    if (ev) throw InternalError("ambiguous side-cut trace for the merge");
    ev = &e;
  }
  if (!ev) {
    throw TraceEventMissing("no side cut containing the merge target");
  }
  LabelId uprime = ev->actor_u;

  int delta_p_before = state.accounting().delta_p;
  std::array<std::vector<LabelId>, 2> joined;
  for (int t = 0; t < 2; ++t) {
    Tree tr = static_cast<Tree>(t);
    const ForestView& f = state.forest(tr);
    NodeId cu = f.component_root(state.leaf_node(tr, uprime));
    NodeId cw = f.component_root(state.leaf_node(tr, target));
    if (cu == cw) throw InternalError("merge targets share a tree already");
    if (state.active_under(tr, cu) != 0 || state.active_under(tr, cw) != 0) {
      throw InternalError("retroactive merge of an active tree");
    }
    std::vector<LabelId> s = state.labels_in_component(tr, cu);
    std::vector<LabelId> sw = state.labels_in_component(tr, cw);
    s.insert(s.end(), sw.begin(), sw.end());
    std::sort(s.begin(), s.end());
    joined[t] = std::move(s);
  }
  if (joined[0] != joined[1]) {
    throw InternalError("paired trees disagree before the merge");
  }
  const std::vector<LabelId>& s = joined[0];

  for (int t = 0; t < 2; ++t) {
    Tree tr = static_cast<Tree>(t);
    const ForestView& f = state.forest(tr);
    const LabeledTree& tree = state.instance().tree(tr);
    NodeId cu = f.component_root(state.leaf_node(tr, uprime));
    NodeId cw = f.component_root(state.leaf_node(tr, target));
    std::vector<NodeId> vs = state.instance().steiner_nodes(tr, s);
    std::vector<char> in_vs(tree.node_count(), 0);
    for (NodeId n : vs) in_vs[n] = 1;

    std::vector<NodeId> undeletes;
    std::vector<NodeId> cuts;
    for (NodeId n : vs) {
      NodeId p = tree.node(n).parent;
      if (p != kNoNode && in_vs[p] && f.deleted(n)) undeletes.push_back(n);
      // Boundary edges that used to connect a different tree get cut so the
      // restored paths claim their nodes exclusively.
      if (p != kNoNode && !in_vs[p] && !f.deleted(n)) {
        NodeId root = f.component_root(p);
        if (root != cu && root != cw) cuts.push_back(n);
      }
      for (NodeId c : {tree.node(n).left, tree.node(n).right}) {
        if (c == kNoNode || in_vs[c] || f.deleted(c)) continue;
        NodeId root = f.component_root(c);
        if (root != cu && root != cw) cuts.push_back(c);
      }
    }
    for (NodeId c : cuts) state.raw_delete_edge(tr, c);
    for (NodeId c : undeletes) state.raw_undelete_edge(tr, c);

    NodeId merged = f.component_root(state.leaf_node(tr, uprime));
    if (state.labels_in_component(tr, merged) != s) {
      throw InternalError("merge failed to restore the joint leaf set");
    }
  }
  if (state.accounting().delta_p != delta_p_before - 1) {
    throw InternalError("retroactive merge must undo exactly one cut");
  }
  state.refresh_delta_d();
}

SolveResult run_red_blue(const Instance& inst, const SolveOptions& opts) {
  SolverState state(inst);
  preprocess(state);
  while (state.active_count() > 0) {
    state.begin_iteration();
    int active_before = state.active_count();
    auto split = find_minimal_incompatible(state);
    if (!split) {
      throw InternalError("preprocessed state with a compatible active set");
    }
    NodeId lca1_r = state.lca_of_labels(Tree::T1, split->r);
    if (resolve_set(state, split->r) == SetOutcome::Fail) {
      state.dual().add_internal(Tree::T1, split->lca1_union, -1);
      state.dual().add_internal(Tree::T1, lca1_r, 1);

      while (active_members(state, split->b).size() >= 2) {
        auto pair = find_active_sibling_pair(state, Tree::T1, split->b);
        if (!pair) throw InternalError("no sibling pair inside the blue set");
        resolve_pair(state, pair->first, pair->second);
      }

      auto rs = active_members(state, split->r);
      auto bs = active_members(state, split->b);
      if (rs.size() != 2 || bs.size() != 1) {
        throw InternalError("unexpected survivor counts after the fail path");
      }
      const ForestView& f2 = state.forest(Tree::T2);
      std::vector<NodeId> roots{
          f2.component_root(state.leaf_node(Tree::T2, rs[0])),
          f2.component_root(state.leaf_node(Tree::T2, rs[1])),
          f2.component_root(state.leaf_node(Tree::T2, bs[0]))};
      std::sort(roots.begin(), roots.end());
      int distinct = static_cast<int>(
          std::unique(roots.begin(), roots.end()) - roots.begin());
      switch (distinct) {
        case 1: handle_triplet_one_tree(state, rs[0], rs[1], bs[0]); break;
        case 2: handle_triplet_two_trees(state, rs[0], rs[1], bs[0]); break;
        case 3: handle_triplet_three_trees(state, rs[0], rs[1], bs[0]); break;
        default: throw InternalError("impossible survivor spread");
      }
    }
    preprocess(state);
    if (state.active_count() >= active_before) {
      throw InternalError("iteration made no progress");
    }
    state.refresh_delta_d();
    if (opts.iteration_hook) opts.iteration_hook(state);
  }
  return finish_solve(state, "redblue", 1, 2, opts);
}

}  // namespace maf
