#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "maf/tree.hpp"
#include "maf/types.hpp"

namespace maf {

inline constexpr const char* kRhoLabel = "_rho_";

/// Two rooted binary trees over one shared label set.
///
/// Labels are canonicalized to a lexicographically sorted table, so LabelId
/// order coincides with lexicographic label order; every deterministic
/// "smallest label" tie break in the solvers is a plain id comparison.
class Instance {
 public:
  static Instance make(LabeledTree t1, LabeledTree t2);

  const LabeledTree& tree(Tree t) const { return trees_[index_of(t)]; }
  int label_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label_name(LabelId l) const { return labels_[l]; }
  LabelId label_id(std::string_view name) const;  // kNoLabel if absent

  NodeId leaf_node(Tree t, LabelId l) const {
    return leaf_node_[index_of(t)][l];
  }
  /// Label of a leaf node, kNoLabel for internal nodes.
  LabelId label_of_node(Tree t, NodeId n) const {
    return node_label_[index_of(t)][n];
  }

  TripletOrientation orient(Tree t, LabelId u, LabelId v, LabelId w) const;
  bool triplet_consistent(LabelId u, LabelId v, LabelId w) const;

  /// True iff every 3-subset of `leaves` has the same orientation in both
  /// trees; equivalently the two restrictions to `leaves` are isomorphic.
  bool is_compatible(std::span<const LabelId> leaves) const;

  /// All nodes of tree `t` lying on a path between two leaves of the set;
  /// a singleton set yields just its leaf.
  std::vector<NodeId> steiner_nodes(Tree t, std::span<const LabelId> leaves) const;

  /// Adds a fresh root with a new `_rho_` leaf above both trees.
  Instance augment_with_rho() const;

  /// FNV-1a hash of the canonical serializations, as fixed-width hex.
  std::string digest() const;

 private:
  std::array<LabeledTree, 2> trees_;
  std::vector<std::string> labels_;
  std::array<std::vector<NodeId>, 2> leaf_node_;
  std::array<std::vector<LabelId>, 2> node_label_;
};

}  // namespace maf
