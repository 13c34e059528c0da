#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "maf/types.hpp"

namespace maf {

class SolverState;

/// Node values of the dual solution. Leaf variables are keyed by label (a
/// leaf is one shared element of both trees); internal variables are keyed
/// per (tree, node). The tree-indicator variables are never stored: one is
/// implicitly set for each active tree of the second forest.
struct DualLedger {
  std::vector<int> y_leaf;
  std::array<std::map<NodeId, int>, 2> y_internal;
  long long y_sum = 0;

  void init(int label_count) {
    y_leaf.assign(label_count, 0);
    y_internal[0].clear();
    y_internal[1].clear();
    y_sum = 0;
  }
  void add_leaf(LabelId l, int delta) {
    y_leaf[l] += delta;
    y_sum += delta;
  }
  void add_internal(Tree t, NodeId n, int delta) {
    y_internal[index_of(t)][n] += delta;
    y_sum += delta;
  }
  int internal_value(Tree t, NodeId n) const {
    auto& m = y_internal[index_of(t)];
    auto it = m.find(n);
    return it == m.end() ? 0 : it->second;
  }
};

/// Running per-run totals: edges deleted from the second forest, dual
/// objective change, and count of the two starred pair outcomes.
struct StepAccounting {
  int delta_p = 0;
  long long delta_d = 0;
  int starred_ops = 0;
};

/// Terminal dual solution attached to a solver result.
struct DualCertificate {
  std::vector<int> y_leaf;
  std::array<std::map<NodeId, int>, 2> y_internal;
  long long objective = 0;
};

/// Objective of the dual solution associated with the current state:
/// sum of node values plus one per active tree of the second forest, minus 1.
long long dual_objective(const SolverState& state);

/// Load on a leaf set: node values over its Steiner nodes in both original
/// trees plus the number of active second-forest trees it meets.
long long compute_load(const SolverState& state, std::span<const LabelId> l);

/// Exhaustively checks every nonempty compatible subset's load and the
/// ledger sign constraints. Only valid for small label counts.
bool verify_dual_feasibility(const SolverState& state, int limit = 12);

/// dual objective >= factor * (edges deleted from the second forest), with
/// the factor given as an exact fraction.
bool lemma_ratio_check(const SolverState& state, int num, int den);

}  // namespace maf
