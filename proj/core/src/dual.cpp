#include "maf/dual.hpp"

#include <algorithm>

#include "maf/solver_state.hpp"

namespace maf {

long long dual_objective(const SolverState& state) {
  return state.dual().y_sum + state.num_active_trees(Tree::T2) - 1;
}

long long compute_load(const SolverState& state, std::span<const LabelId> l) {
  if (l.empty()) throw InvalidSize("load of an empty set");
  const Instance& inst = state.instance();
  const DualLedger& ledger = state.dual();
  long long load = 0;
  // Node values over the Steiner sets of both original trees; a leaf is one
  // shared node, so leaf values enter once.
  for (LabelId u : l) load += ledger.y_leaf[u];
  for (int t = 0; t < 2; ++t) {
    for (NodeId n : inst.steiner_nodes(static_cast<Tree>(t), l)) {
      if (!inst.tree(static_cast<Tree>(t)).is_leaf(n)) {
        load += ledger.internal_value(static_cast<Tree>(t), n);
      }
    }
  }
  // One unit per active second-forest tree containing an active leaf of l.
  const ForestView& f2 = state.forest(Tree::T2);
  std::vector<NodeId> roots;
  for (LabelId u : l) {
    if (!state.is_active(u)) continue;
    roots.push_back(f2.component_root(state.leaf_node(Tree::T2, u)));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  load += static_cast<long long>(roots.size());
  return load;
}

bool verify_dual_feasibility(const SolverState& state, int limit) {
  const Instance& inst = state.instance();
  int n = inst.label_count();
  if (n > limit) {
    throw InstanceTooLarge("exhaustive dual verification beyond the cap");
  }
  const DualLedger& ledger = state.dual();
  for (LabelId l = 0; l < n; ++l) {
    int y = ledger.y_leaf[l];
    if (y < 0 || y > 1) return false;
    if (state.is_active(l) && y != 0) return false;
  }
  for (int t = 0; t < 2; ++t) {
    for (const auto& [node, y] : ledger.y_internal[t]) {
      if (y > 0) return false;
    }
  }
  std::vector<LabelId> subset;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    subset.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(i);
    }
    if (!inst.is_compatible(subset)) continue;
    if (compute_load(state, subset) > 1) return false;
  }
  return true;
}

bool lemma_ratio_check(const SolverState& state, int num, int den) {
  return den * dual_objective(state) >=
         static_cast<long long>(num) * state.accounting().delta_p;
}

}  // namespace maf
