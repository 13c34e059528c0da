#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maf/types.hpp"

namespace maf {

struct TreeNode {
  NodeId parent = kNoNode;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
  std::string label;  // nonempty exactly for leaves
  int depth = 0;
  int tin = 0;   // preorder entry time
  int tout = 0;  // preorder exit time
};

/// A rooted binary tree whose leaves carry distinct labels.
///
/// The node table is immutable after construction; algorithms that "delete"
/// edges do so in an overlay (ForestView) so node ids, depths and preorder
/// intervals stay valid for the lifetime of the tree.
class LabeledTree {
 public:
  NodeId root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int leaf_count() const { return static_cast<int>(leaf_of_label_.size()); }
  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  bool is_leaf(NodeId id) const { return nodes_[id].left == kNoNode; }

  /// Leaf node for a label, or kNoNode if the label is absent.
  NodeId leaf_of(std::string_view label) const;
  const std::map<std::string, NodeId, std::less<>>& leaves() const {
    return leaf_of_label_;
  }

  /// True if `a` is an ancestor of `b` (reflexive).
  bool is_ancestor(NodeId a, NodeId b) const {
    return nodes_[a].tin <= nodes_[b].tin && nodes_[b].tin < nodes_[a].tout;
  }

  NodeId lca(NodeId a, NodeId b) const;

  /// Path string of '0'/'1' child steps from the root; "" is the root.
  /// Used as a stable structural node encoding in certificates.
  std::string node_path(NodeId id) const;
  NodeId node_at_path(std::string_view path) const;  // kNoNode if invalid

  friend class TreeBuilder;

 private:
  std::vector<TreeNode> nodes_;
  NodeId root_ = kNoNode;
  std::map<std::string, NodeId, std::less<>> leaf_of_label_;
};

/// Bottom-up construction: children are created before their parent.
/// finish() validates binarity and the leaf-label bijection.
class TreeBuilder {
 public:
  NodeId add_leaf(std::string label);
  NodeId add_internal(NodeId left, NodeId right);
  LabeledTree finish(NodeId root);

  /// Recursively copies `node` of `src` into this builder.
  NodeId copy_subtree(const LabeledTree& src, NodeId node);

 private:
  std::vector<TreeNode> nodes_;
};

bool trees_equal(const LabeledTree& a, const LabeledTree& b);

}  // namespace maf
