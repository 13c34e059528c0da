#include "maf/solver_state.hpp"

#include <algorithm>

namespace maf {

const char* to_string(CutKind k) {
  switch (k) {
    case CutKind::CutW: return "cut_w";
    case CutKind::FinalCut: return "final_cut";
    case CutKind::CutU: return "cut_u";
    case CutKind::CutSingleton: return "cut_singleton";
    case CutKind::ProcedureCut: return "procedure_cut";
  }
  return "?";
}

SolverState::SolverState(const Instance& inst) : inst_(&inst) {
  if (inst.label_count() == 0) throw InvalidSize("instance has no labels");
  forests_.emplace_back(inst.tree(Tree::T1));
  forests_.emplace_back(inst.tree(Tree::T2));
  active_.assign(inst.label_count(), 1);
  active_count_ = inst.label_count();
  merges_.assign(inst.label_count(), MergeRecord{});
  dual_.init(inst.label_count());
  for (int t = 0; t < 2; ++t) {
    const LabeledTree& tree = inst.tree(static_cast<Tree>(t));
    auto& counts = active_under_[t];
    counts.assign(tree.node_count(), 0);
    // Every leaf starts active; counts by decreasing tin so children are
    // accumulated before parents.
    std::vector<NodeId> by_tin(tree.node_count());
    for (NodeId n = 0; n < tree.node_count(); ++n) by_tin[n] = n;
    std::sort(by_tin.begin(), by_tin.end(), [&](NodeId a, NodeId b) {
      return tree.node(a).tin > tree.node(b).tin;
    });
    for (NodeId n : by_tin) {
      if (tree.is_leaf(n)) {
        counts[n] = 1;
      } else {
        counts[n] = counts[tree.node(n).left] + counts[tree.node(n).right];
      }
    }
    active_trees_[t] = 1;
  }
}

std::vector<LabelId> SolverState::active_labels() const {
  std::vector<LabelId> out;
  out.reserve(active_count_);
  for (LabelId l = 0; l < static_cast<LabelId>(active_.size()); ++l) {
    if (active_[l]) out.push_back(l);
  }
  return out;
}

std::vector<LabelId> SolverState::active_leaves_under(Tree t, NodeId n) const {
  const ForestView& f = forests_[index_of(t)];
  const auto& counts = active_under_[index_of(t)];
  std::vector<LabelId> out;
  if (counts[n] == 0) return out;
  std::vector<NodeId> stack{n};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (f.base().is_leaf(cur)) {
      LabelId l = inst_->label_of_node(t, cur);
      if (l != kNoLabel && active_[l]) out.push_back(l);
      continue;
    }
    NodeId r = f.intact_right(cur);
    if (r != kNoNode && counts[r] > 0) stack.push_back(r);
    NodeId l = f.intact_left(cur);
    if (l != kNoNode && counts[l] > 0) stack.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LabelId> SolverState::active_leaves_in_component(Tree t,
                                                             NodeId n) const {
  return active_leaves_under(t, forests_[index_of(t)].component_root(n));
}

std::vector<LabelId> SolverState::labels_in_component(Tree t, NodeId n) const {
  const ForestView& f = forests_[index_of(t)];
  std::vector<LabelId> out;
  for (NodeId leaf : f.component_leaf_nodes(n)) {
    LabelId l = inst_->label_of_node(t, leaf);
    if (l != kNoLabel) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeId SolverState::lca_of_labels(Tree t, std::span<const LabelId> ls) const {
  if (ls.empty()) throw NoActiveLeaves("empty leaf set");
  const ForestView& f = forests_[index_of(t)];
  NodeId acc = leaf_node(t, ls[0]);
  NodeId root = f.component_root(acc);
  for (size_t i = 1; i < ls.size(); ++i) {
    NodeId n = leaf_node(t, ls[i]);
    if (f.component_root(n) != root) {
      throw DisconnectedLeaves("leaves span multiple components");
    }
    acc = f.base().lca(acc, n);
  }
  return acc;
}

std::optional<NodeId> SolverState::parent_of_active_set(
    Tree t, std::span<const LabelId> w) const {
  const ForestView& f = forests_[index_of(t)];
  const auto& counts = active_under_[index_of(t)];
  for (LabelId l : w) {
    if (!active_[l]) throw InternalError("parent_of_active_set: inactive leaf");
  }
  NodeId x = lca_of_labels(t, w);
  int size = static_cast<int>(w.size());
  while (x != kNoNode) {
    if (counts[x] > size) return x;
    x = f.component_parent(x);
  }
  return std::nullopt;
}

bool SolverState::active_siblings(Tree t, LabelId u, LabelId v) const {
  auto pu = parent_of_active(t, u);
  auto pv = parent_of_active(t, v);
  return pu && pv && *pu == *pv;
}

void SolverState::refresh_counts_on_delete(Tree t, NodeId child) {
  auto& counts = active_under_[index_of(t)];
  const ForestView& f = forests_[index_of(t)];
  int w = counts[child];
  NodeId cur = f.base().node(child).parent;
  NodeId top = cur;
  while (cur != kNoNode) {
    counts[cur] -= w;
    top = cur;
    cur = f.component_parent(cur);
  }
  if (w > 0 && counts[top] > 0) ++active_trees_[index_of(t)];
}

void SolverState::refresh_counts_on_undelete(Tree t, NodeId child) {
  auto& counts = active_under_[index_of(t)];
  const ForestView& f = forests_[index_of(t)];
  int w = counts[child];
  NodeId top = f.component_root(f.base().node(child).parent);
  bool upper_active = counts[top] > 0;
  NodeId cur = f.base().node(child).parent;
  while (cur != kNoNode) {
    counts[cur] += w;
    cur = f.component_parent(cur);
  }
  if (w > 0 && upper_active) --active_trees_[index_of(t)];
}

void SolverState::raw_delete_edge(Tree t, NodeId child) {
  refresh_counts_on_delete(t, child);
  forests_[index_of(t)].delete_edge(child);
  if (t == Tree::T2) ++accounting_.delta_p;
  refresh_delta_d();
}

void SolverState::raw_undelete_edge(Tree t, NodeId child) {
  forests_[index_of(t)].undelete_edge(child);
  refresh_counts_on_undelete(t, child);
  if (t == Tree::T2) --accounting_.delta_p;
  refresh_delta_d();
}

void SolverState::refresh_delta_d() {
  accounting_.delta_d = dual_.y_sum + active_trees_[1] - 1;
}

const CutEvent& SolverState::cut_off(Tree t, std::span<const LabelId> w,
                                     CutKind kind, LabelId actor_u,
                                     LabelId actor_v) {
  auto p = parent_of_active_set(t, w);
  if (!p) throw UndefinedParent("cut_off: no other active leaf in component");
  const ForestView& f = forests_[index_of(t)];
  // Child of p(w) toward w: last node on the climb from lca(w).
  NodeId below = lca_of_labels(t, w);
  while (f.component_parent(below) != *p) {
    below = f.component_parent(below);
    if (below == kNoNode) throw InternalError("cut_off: detached parent");
  }
  if (active_under(t, below) != static_cast<int>(w.size())) {
    throw InternalError("cut_off: set is not the active leaves of a subtree");
  }
  raw_delete_edge(t, below);

  CutEvent ev;
  ev.iteration = iteration_;
  ev.forest = t;
  ev.kind = kind;
  ev.edge = below;
  ev.cut_set.assign(w.begin(), w.end());
  std::sort(ev.cut_set.begin(), ev.cut_set.end());
  ev.actor_u = actor_u;
  ev.actor_v = actor_v;
  trace_.push_back(std::move(ev));
  return trace_.back();
}

void SolverState::merge_active(LabelId u, LabelId v) {
  if (!active_siblings(Tree::T1, u, v) || !active_siblings(Tree::T2, u, v)) {
    throw NotSiblings("merge requires active siblings in both forests");
  }
  merge_unchecked(u, v);
}

void SolverState::merge_unchecked(LabelId u, LabelId v) {
  if (!active_[u] || !active_[v]) throw InternalError("merge of inactive leaf");
  merges_[u] = MergeRecord{true, v};
  active_[u] = 0;
  --active_count_;
  for (int t = 0; t < 2; ++t) {
    auto& counts = active_under_[t];
    const ForestView& f = forests_[t];
    NodeId cur = leaf_node(static_cast<Tree>(t), u);
    NodeId top = cur;
    while (cur != kNoNode) {
      counts[cur] -= 1;
      top = cur;
      cur = f.component_parent(cur);
    }
    if (counts[top] == 0) --active_trees_[t];
  }
  refresh_delta_d();
}

void SolverState::deactivate_cut(LabelId u) {
  if (!active_[u]) throw InternalError("deactivate of inactive leaf");
  merges_[u] = MergeRecord{false, kNoLabel};
  active_[u] = 0;
  --active_count_;
  for (int t = 0; t < 2; ++t) {
    auto& counts = active_under_[t];
    const ForestView& f = forests_[t];
    NodeId cur = leaf_node(static_cast<Tree>(t), u);
    NodeId top = cur;
    while (cur != kNoNode) {
      counts[cur] -= 1;
      top = cur;
      cur = f.component_parent(cur);
    }
    if (counts[top] == 0) --active_trees_[t];
  }
  refresh_delta_d();
}

void SolverState::set_deactivated_on_last_event(LabelId u) {
  if (trace_.empty()) throw InternalError("no trace event to annotate");
  trace_.back().deactivated = u;
}

std::optional<RedBlueSplit> find_minimal_incompatible(
    const SolverState& state) {
  if (state.active_count() == 0) throw NoActiveLeaves("no active leaves");
  const Instance& inst = state.instance();
  std::vector<LabelId> all = state.active_labels();
  if (inst.is_compatible(all)) return std::nullopt;

  const ForestView& f1 = state.forest(Tree::T1);
  const LabeledTree& t1 = inst.tree(Tree::T1);
  NodeId x = state.lca_of_labels(Tree::T1, all);
  std::vector<LabelId> side_l, side_r;
  while (true) {
    NodeId cl = f1.intact_left(x);
    NodeId cr = f1.intact_right(x);
    if (cl == kNoNode || cr == kNoNode) {
      throw InternalError("descent reached a non-branching node");
    }
    side_l = state.active_leaves_under(Tree::T1, cl);
    side_r = state.active_leaves_under(Tree::T1, cr);
    if (side_l.empty() || side_r.empty()) {
      throw InternalError("descent lost the lca invariant");
    }
    bool ok_l = inst.is_compatible(side_l);
    bool ok_r = inst.is_compatible(side_r);
    if (!ok_l) {
      x = state.lca_of_labels(Tree::T1, side_l);
      continue;
    }
    if (!ok_r) {
      x = state.lca_of_labels(Tree::T1, side_r);
      continue;
    }
    break;
  }
  (void)t1;

  // Side whose leaves span both child subtrees of lca_2(union) is R; if both
  // span, the side holding the smallest label wins.
  RedBlueSplit split;
  split.lca1_union = x;
  std::vector<LabelId> un;
  un.reserve(side_l.size() + side_r.size());
  un.insert(un.end(), side_l.begin(), side_l.end());
  un.insert(un.end(), side_r.begin(), side_r.end());
  const LabeledTree& t2 = inst.tree(Tree::T2);
  NodeId m = t2.lca(inst.leaf_node(Tree::T2, un[0]),
                    inst.leaf_node(Tree::T2, un[1]));
  for (size_t i = 2; i < un.size(); ++i) {
    m = t2.lca(m, inst.leaf_node(Tree::T2, un[i]));
  }
  auto spans = [&](const std::vector<LabelId>& side) {
    if (side.size() < 2) return false;
    NodeId l = inst.leaf_node(Tree::T2, side[0]);
    for (size_t i = 1; i < side.size(); ++i) {
      l = t2.lca(l, inst.leaf_node(Tree::T2, side[i]));
    }
    return l == m;
  };
  bool l_spans = spans(side_l);
  bool r_spans = spans(side_r);
  bool l_is_r;
  if (l_spans && r_spans) {
    l_is_r = *std::min_element(side_l.begin(), side_l.end()) <
             *std::min_element(side_r.begin(), side_r.end());
  } else if (l_spans || r_spans) {
    l_is_r = l_spans;
  } else {
    throw InternalError("no side spans the union lca");
  }
  split.r = l_is_r ? std::move(side_l) : std::move(side_r);
  split.b = l_is_r ? std::move(side_r) : std::move(side_l);
  return split;
}

void sort_blocks(std::vector<std::vector<LabelId>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
}

AgreementForest extract_forest(const SolverState& state) {
  if (state.active_count() != 0) {
    throw ActiveLeavesRemain("forest extraction before termination");
  }
  const Instance& inst = state.instance();
  std::array<std::vector<std::vector<LabelId>>, 2> parts;
  for (int t = 0; t < 2; ++t) {
    const ForestView& f = state.forest(static_cast<Tree>(t));
    std::vector<char> seen(f.base().node_count(), 0);
    for (LabelId l = 0; l < inst.label_count(); ++l) {
      NodeId root = f.component_root(state.leaf_node(static_cast<Tree>(t), l));
      if (seen[root]) continue;
      seen[root] = 1;
      parts[t].push_back(state.labels_in_component(static_cast<Tree>(t), root));
    }
    sort_blocks(parts[t]);
  }
  if (parts[0] != parts[1]) {
    throw PartitionMismatch("forests disagree on the final partition");
  }
  AgreementForest out;
  out.blocks = std::move(parts[0]);
  return out;
}

}  // namespace maf
