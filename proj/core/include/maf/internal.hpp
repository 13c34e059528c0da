#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "maf/solver_state.hpp"

namespace maf::detail {

/// Deterministic pair selection: among active sibling pairs of forest `t`
/// (optionally restricted to `within`), the pair whose smaller label is
/// least. Scanning labels in ascending order yields exactly that pair.
std::optional<std::pair<LabelId, LabelId>> find_active_sibling_pair(
    const SolverState& state, Tree t,
    std::span<const LabelId> within = {});

/// True when `u` is the only active leaf of its tree in forest `t`.
bool alone_in_tree(const SolverState& state, Tree t, LabelId u);

/// True when the second-forest tree of `u` holds an active leaf `w` with
/// uv|w in the second input tree.
bool has_outside_witness(const SolverState& state, LabelId u, LabelId v);

/// Nodes of the path from `a` to `b` within one component.
std::vector<NodeId> path_between(const ForestView& f, NodeId a, NodeId b);

/// Cuts off the first active subtree hanging off the path from `u` toward
/// `v` in the second forest and applies the matching dual decrease at its
/// attachment node. Returns the attachment node.
NodeId cut_active_subtree_between(SolverState& state, LabelId u, LabelId v);

/// Cut `x` off in the given forest and record the actor pair.
void cut_leaf(SolverState& state, Tree t, LabelId x, CutKind kind,
              LabelId actor_u = kNoLabel, LabelId actor_v = kNoLabel);

}  // namespace maf::detail
