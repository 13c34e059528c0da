#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "maf/dual.hpp"
#include "maf/forest.hpp"
#include "maf/instance.hpp"
#include "maf/types.hpp"

namespace maf {

enum class CutKind { CutW, FinalCut, CutU, CutSingleton, ProcedureCut };

const char* to_string(CutKind k);

/// One deleted edge, with enough context to audit the run and to locate the
/// pair call whose side cut must be undone by a retroactive merge.
struct CutEvent {
  int iteration = 0;
  Tree forest = Tree::T1;
  CutKind kind = CutKind::ProcedureCut;
  NodeId edge = kNoNode;              // child id of the deleted edge
  std::vector<LabelId> cut_set;       // active leaves of the severed side
  LabelId actor_u = kNoLabel;         // pair that produced the cut, if any
  LabelId actor_v = kNoLabel;
  LabelId deactivated = kNoLabel;
};

/// How a deactivated leaf was resolved.
struct MergeRecord {
  bool merged = false;       // false: resolved by a cut
  LabelId into = kNoLabel;   // representative when merged
};

/// A minimal incompatible active sibling set, split into its two compatible
/// sides. `r` is the side whose leaves span both child subtrees of the
/// second tree's lca of the union.
struct RedBlueSplit {
  std::vector<LabelId> r;
  std::vector<LabelId> b;
  NodeId lca1_union = kNoNode;
};

/// Mutable working state shared by the solvers: the two forests, the active
/// leaf set, merge records, the dual ledger, accounting, and the cut trace.
class SolverState {
 public:
  explicit SolverState(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  const ForestView& forest(Tree t) const { return forests_[index_of(t)]; }

  // -- active leaves ---------------------------------------------------
  bool is_active(LabelId l) const { return active_[l] != 0; }
  int active_count() const { return active_count_; }
  std::vector<LabelId> active_labels() const;
  const MergeRecord& merge_record(LabelId l) const { return merges_[l]; }

  NodeId leaf_node(Tree t, LabelId l) const { return inst_->leaf_node(t, l); }

  /// Active leaves in the subtree below `n` reachable along intact edges.
  int active_under(Tree t, NodeId n) const {
    return active_under_[index_of(t)][n];
  }
  std::vector<LabelId> active_leaves_under(Tree t, NodeId n) const;
  std::vector<LabelId> active_leaves_in_component(Tree t, NodeId n) const;
  std::vector<LabelId> labels_in_component(Tree t, NodeId n) const;
  int num_active_trees(Tree t) const { return active_trees_[index_of(t)]; }

  /// Lowest node that is an ancestor of all of `w` and of at least one other
  /// active leaf; absent when the component holds no other active leaf.
  std::optional<NodeId> parent_of_active_set(Tree t,
                                             std::span<const LabelId> w) const;
  std::optional<NodeId> parent_of_active(Tree t, LabelId u) const {
    return parent_of_active_set(t, std::span<const LabelId>(&u, 1));
  }

  NodeId lca_of_labels(Tree t, std::span<const LabelId> ls) const;

  bool active_siblings(Tree t, LabelId u, LabelId v) const;

  // -- mutations -------------------------------------------------------

  /// Deletes the edge directly below p(w) toward w and records the event.
  /// `w` must be exactly the active leaves of the severed subtree.
  const CutEvent& cut_off(Tree t, std::span<const LabelId> w, CutKind kind,
                          LabelId actor_u = kNoLabel,
                          LabelId actor_v = kNoLabel);

  /// Merge requiring active siblinghood in both forests.
  void merge_active(LabelId u, LabelId v);
  /// Merge on a caller-supplied justification.
  void merge_unchecked(LabelId u, LabelId v);

  /// Deactivation bookkeeping for a leaf resolved by cutting.
  void deactivate_cut(LabelId u);

  void set_deactivated_on_last_event(LabelId u);

  // -- dual ledger -----------------------------------------------------
  DualLedger& dual() { return dual_; }
  const DualLedger& dual() const { return dual_; }
  StepAccounting& accounting() { return accounting_; }
  const StepAccounting& accounting() const { return accounting_; }
  void refresh_delta_d();

  // -- trace -----------------------------------------------------------
  void begin_iteration() {
    ++iteration_;
    iteration_starred_base_ = accounting_.starred_ops;
  }
  int iteration() const { return iteration_; }
  int starred_this_iteration() const {
    return accounting_.starred_ops - iteration_starred_base_;
  }
  const std::vector<CutEvent>& trace() const { return trace_; }

  // low-level edge surgery for the retroactive merge
  void raw_delete_edge(Tree t, NodeId child);
  void raw_undelete_edge(Tree t, NodeId child);

 private:
  void refresh_counts_on_delete(Tree t, NodeId child);
  void refresh_counts_on_undelete(Tree t, NodeId child);

  const Instance* inst_;
  std::vector<ForestView> forests_;
  std::vector<char> active_;
  int active_count_ = 0;
  std::array<std::vector<int>, 2> active_under_;
  std::array<int, 2> active_trees_{1, 1};
  std::vector<MergeRecord> merges_;
  DualLedger dual_;
  StepAccounting accounting_;
  std::vector<CutEvent> trace_;
  int iteration_ = 0;
  int iteration_starred_base_ = 0;
};

/// Locates the minimal incompatible active sibling set by descending from
/// the lca of the active leaves in the first forest; absent iff the whole
/// active set is compatible.
std::optional<RedBlueSplit> find_minimal_incompatible(const SolverState& state);

struct AgreementForest {
  std::vector<std::vector<LabelId>> blocks;  // sorted blocks of sorted labels
  int value() const { return static_cast<int>(blocks.size()) - 1; }
};

/// Reads off the final partition once no active leaves remain, asserting the
/// two forests agree on it.
AgreementForest extract_forest(const SolverState& state);

void sort_blocks(std::vector<std::vector<LabelId>>& blocks);

}  // namespace maf
