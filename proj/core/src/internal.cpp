#include "maf/internal.hpp"

#include <algorithm>

namespace maf::detail {

std::optional<std::pair<LabelId, LabelId>> find_active_sibling_pair(
    const SolverState& state, Tree t, std::span<const LabelId> within) {
  auto scan = [&](LabelId u) -> std::optional<std::pair<LabelId, LabelId>> {
    if (!state.is_active(u)) return std::nullopt;
    auto p = state.parent_of_active(t, u);
    if (!p || state.active_under(t, *p) != 2) return std::nullopt;
    auto both = state.active_leaves_under(t, *p);
    LabelId v = both[0] == u ? both[1] : both[0];
    return std::make_pair(std::min(u, v), std::max(u, v));
  };
  if (!within.empty()) {
    for (LabelId u : within) {
      if (auto res = scan(u)) {
        LabelId partner = res->first == u ? res->second : res->first;
        if (!std::binary_search(within.begin(), within.end(), partner)) {
          throw InternalError("sibling pair escapes its active sibling set");
        }
        return res;
      }
    }
    return std::nullopt;
  }
  for (LabelId u = 0; u < state.instance().label_count(); ++u) {
    if (auto res = scan(u)) return res;
  }
  return std::nullopt;
}

bool alone_in_tree(const SolverState& state, Tree t, LabelId u) {
  const ForestView& f = state.forest(t);
  NodeId root = f.component_root(state.leaf_node(t, u));
  return state.active_under(t, root) == 1;
}

bool has_outside_witness(const SolverState& state, LabelId u, LabelId v) {
  const Instance& inst = state.instance();
  NodeId nu = state.leaf_node(Tree::T2, u);
  for (LabelId w : state.active_leaves_in_component(Tree::T2, nu)) {
    if (w == u || w == v) continue;
    if (inst.orient(Tree::T2, u, v, w) == TripletOrientation::UV_W) {
      return true;
    }
  }
  return false;
}

std::vector<NodeId> path_between(const ForestView& f, NodeId a, NodeId b) {
  NodeId top = f.lca_in_component(a, b);
  std::vector<NodeId> down;
  for (NodeId cur = a; cur != top; cur = f.base().node(cur).parent) {
    down.push_back(cur);
  }
  down.push_back(top);
  std::vector<NodeId> up;
  for (NodeId cur = b; cur != top; cur = f.base().node(cur).parent) {
    up.push_back(cur);
  }
  down.insert(down.end(), up.rbegin(), up.rend());
  return down;
}

NodeId cut_active_subtree_between(SolverState& state, LabelId u, LabelId v) {
  const ForestView& f2 = state.forest(Tree::T2);
  std::vector<NodeId> path = path_between(f2, state.leaf_node(Tree::T2, u),
                                          state.leaf_node(Tree::T2, v));
  for (size_t i = 1; i + 1 < path.size(); ++i) {
    NodeId x = path[i];
    for (NodeId c : {f2.intact_left(x), f2.intact_right(x)}) {
      if (c == kNoNode || c == path[i - 1] || c == path[i + 1]) continue;
      if (state.active_under(Tree::T2, c) == 0) continue;
      auto w = state.active_leaves_under(Tree::T2, c);
      state.cut_off(Tree::T2, w, CutKind::CutW, u, v);
      state.dual().add_internal(Tree::T2, x, -1);
      return x;
    }
  }
  throw InternalError("no active subtree hangs between the pair");
}

void cut_leaf(SolverState& state, Tree t, LabelId x, CutKind kind,
              LabelId actor_u, LabelId actor_v) {
  state.cut_off(t, {&x, 1}, kind, actor_u, actor_v);
}

}  // namespace maf::detail
