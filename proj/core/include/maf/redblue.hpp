#pragma once

#include <span>

#include "maf/solve.hpp"

namespace maf {

enum class PairOutcomeKind {
  CrossTreeFinalCut,
  CrossTreeSoloCut,
  PlainMerge,
  MergeAfterCut,
  CutWThenCutU,
};

const char* to_string(PairOutcomeKind k);
/// The two outcomes whose cut count equals twice the dual gain minus one.
inline bool is_starred(PairOutcomeKind k) {
  return k == PairOutcomeKind::CrossTreeFinalCut ||
         k == PairOutcomeKind::MergeAfterCut;
}

struct ResolvePairOutcome {
  PairOutcomeKind kind;
  LabelId deactivated = kNoLabel;
  std::vector<CutEvent> cut_events;
};

enum class SetOutcome { Success, Fail };

/// Merges every pair of leaves that are active siblings in both forests and
/// deactivates every leaf alone in its second-forest tree; cuts nothing from
/// the second forest and leaves the dual objective unchanged.
void preprocess(SolverState& state);

/// Resolves one active sibling pair of the first forest, deactivating
/// exactly one of the two leaves.
ResolvePairOutcome resolve_pair(SolverState& state, LabelId u, LabelId v);

/// Distills a compatible active sibling set down to two leaves and finishes
/// them off when the dual gain covers half the cuts; otherwise reports Fail
/// with both survivors still active.
SetOutcome resolve_set(SolverState& state, std::span<const LabelId> r);

/// Terminal-triplet handlers, by the number of distinct second-forest trees
/// holding the three survivors.
void handle_triplet_one_tree(SolverState& state, LabelId r1, LabelId r2,
                             LabelId b);
void handle_triplet_three_trees(SolverState& state, LabelId r1, LabelId r2,
                                LabelId b);
void handle_triplet_two_trees(SolverState& state, LabelId r1, LabelId r2,
                              LabelId b);

/// Rejoins the tree that `target` was severed into with the tree of the leaf
/// deactivated by the pair call that cut it, reducing the cut count by one.
void retroactive_merge(SolverState& state, LabelId target);

/// The Red-Blue 2-approximation.
SolveResult run_red_blue(const Instance& inst, const SolveOptions& opts = {});

}  // namespace maf
