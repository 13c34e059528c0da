#include "maf/forest.hpp"

#include <algorithm>

namespace maf {

std::vector<NodeId> ForestView::deleted_edges() const {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < static_cast<NodeId>(deleted_.size()); ++n) {
    if (deleted_[n]) out.push_back(n);
  }
  return out;
}

void ForestView::delete_edge(NodeId child) {
  if (base_->node(child).parent == kNoNode) {
    throw InternalError("cannot delete the root edge");
  }
  if (deleted_[child]) throw InternalError("edge already deleted");
  deleted_[child] = 1;
  ++deleted_count_;
}

void ForestView::undelete_edge(NodeId child) {
  if (!deleted_[child]) throw InternalError("edge not deleted");
  deleted_[child] = 0;
  --deleted_count_;
}

std::vector<NodeId> ForestView::component_leaf_nodes(NodeId n) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{component_root(n)};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (base_->is_leaf(cur)) {
      out.push_back(cur);
      continue;
    }
    if (NodeId r = intact_right(cur); r != kNoNode) stack.push_back(r);
    if (NodeId l = intact_left(cur); l != kNoNode) stack.push_back(l);
  }
  return out;
}

int ForestView::leafy_component_count() const {
  std::vector<char> seen(base_->node_count(), 0);
  int count = 0;
  for (const auto& [label, leaf] : base_->leaves()) {
    NodeId root = component_root(leaf);
    if (!seen[root]) {
      seen[root] = 1;
      ++count;
    }
  }
  return count;
}

}  // namespace maf
