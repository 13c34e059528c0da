#pragma once

#include <vector>

#include "maf/tree.hpp"
#include "maf/types.hpp"

namespace maf {

/// A forest obtained from a fixed base tree by edge deletions.
///
/// An edge is identified by its child node id. Node ids, depths and preorder
/// intervals always refer to the base tree; component structure is the only
/// thing that changes.
class ForestView {
 public:
  explicit ForestView(const LabeledTree& base) : base_(&base) {
    deleted_.assign(base.node_count(), 0);
  }

  const LabeledTree& base() const { return *base_; }

  bool deleted(NodeId child) const { return deleted_[child] != 0; }
  int deleted_count() const { return deleted_count_; }
  std::vector<NodeId> deleted_edges() const;

  void delete_edge(NodeId child);
  void undelete_edge(NodeId child);

  /// Parent within the component, kNoNode at a component root.
  NodeId component_parent(NodeId n) const {
    if (deleted_[n]) return kNoNode;
    return base_->node(n).parent;
  }

  NodeId component_root(NodeId n) const {
    while (component_parent(n) != kNoNode) n = component_parent(n);
    return n;
  }

  bool same_component(NodeId a, NodeId b) const {
    return component_root(a) == component_root(b);
  }

  /// Lca of two nodes of one component (equals the base-tree lca).
  NodeId lca_in_component(NodeId a, NodeId b) const {
    if (!same_component(a, b)) {
      throw DisconnectedLeaves("nodes span multiple components");
    }
    return base_->lca(a, b);
  }

  NodeId intact_left(NodeId n) const {
    NodeId c = base_->node(n).left;
    return (c != kNoNode && !deleted_[c]) ? c : kNoNode;
  }
  NodeId intact_right(NodeId n) const {
    NodeId c = base_->node(n).right;
    return (c != kNoNode && !deleted_[c]) ? c : kNoNode;
  }

  /// All base-tree leaves in the component containing `n`.
  std::vector<NodeId> component_leaf_nodes(NodeId n) const;

  /// Number of components that contain at least one leaf.
  int leafy_component_count() const;

 private:
  const LabeledTree* base_;
  std::vector<char> deleted_;
  int deleted_count_ = 0;
};

}  // namespace maf
