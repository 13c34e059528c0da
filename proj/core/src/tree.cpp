#include "maf/tree.hpp"

#include <algorithm>

namespace maf {

NodeId LabeledTree::leaf_of(std::string_view label) const {
  auto it = leaf_of_label_.find(label);
  return it == leaf_of_label_.end() ? kNoNode : it->second;
}

NodeId LabeledTree::lca(NodeId a, NodeId b) const {
  while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
  while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

std::string LabeledTree::node_path(NodeId id) const {
  std::string path;
  while (nodes_[id].parent != kNoNode) {
    NodeId p = nodes_[id].parent;
    path.push_back(nodes_[p].left == id ? '0' : '1');
    id = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

NodeId LabeledTree::node_at_path(std::string_view path) const {
  NodeId cur = root_;
  for (char c : path) {
    if (cur == kNoNode) return kNoNode;
    if (c == '0') {
      cur = nodes_[cur].left;
    } else if (c == '1') {
      cur = nodes_[cur].right;
    } else {
      return kNoNode;
    }
  }
  return cur;
}

NodeId TreeBuilder::add_leaf(std::string label) {
  if (label.empty()) throw UnlabeledLeaf("leaf without a label");
  TreeNode n;
  n.label = std::move(label);
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TreeBuilder::add_internal(NodeId left, NodeId right) {
  TreeNode n;
  n.left = left;
  n.right = right;
  nodes_.push_back(std::move(n));
  NodeId id = static_cast<NodeId>(nodes_.size() - 1);
  nodes_[left].parent = id;
  nodes_[right].parent = id;
  return id;
}

NodeId TreeBuilder::copy_subtree(const LabeledTree& src, NodeId node) {
  const TreeNode& n = src.node(node);
  if (n.left == kNoNode) return add_leaf(n.label);
  NodeId l = copy_subtree(src, n.left);
  NodeId r = copy_subtree(src, n.right);
  return add_internal(l, r);
}

LabeledTree TreeBuilder::finish(NodeId root) {
  LabeledTree t;
  t.nodes_ = std::move(nodes_);
  t.root_ = root;
  nodes_.clear();

  // Iterative preorder: depths, tin/tout, label bijection.
  int timer = 0;
  std::vector<NodeId> stack{root};
  t.nodes_[root].parent = kNoNode;
  t.nodes_[root].depth = 0;
  std::vector<NodeId> order;
  order.reserve(t.nodes_.size());
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    order.push_back(id);
    TreeNode& n = t.nodes_[id];
    n.tin = timer++;
    bool has_left = n.left != kNoNode;
    bool has_right = n.right != kNoNode;
    if (has_left != has_right) throw NonBinaryNode("node with one child");
    if (has_left) {
      if (!n.label.empty()) {
        throw MalformedNewick("internal node carries a label");
      }
      t.nodes_[n.left].depth = n.depth + 1;
      t.nodes_[n.right].depth = n.depth + 1;
      stack.push_back(n.right);
      stack.push_back(n.left);
    } else {
      if (n.label.empty()) throw UnlabeledLeaf("leaf without a label");
      auto [it, inserted] = t.leaf_of_label_.emplace(n.label, id);
      if (!inserted) throw DuplicateLabel("duplicate label: " + n.label);
    }
  }
  if (order.size() != t.nodes_.size()) {
    throw InternalError("tree builder produced disconnected nodes");
  }
  // tout in reverse preorder
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TreeNode& n = t.nodes_[*it];
    n.tout = n.left == kNoNode
                 ? n.tin + 1
                 : std::max(t.nodes_[n.left].tout, t.nodes_[n.right].tout);
  }
  return t;
}

namespace {
bool subtrees_equal(const LabeledTree& a, NodeId na, const LabeledTree& b,
                    NodeId nb) {
  const TreeNode& x = a.node(na);
  const TreeNode& y = b.node(nb);
  if ((x.left == kNoNode) != (y.left == kNoNode)) return false;
  if (x.left == kNoNode) return x.label == y.label;
  return subtrees_equal(a, x.left, b, y.left) &&
         subtrees_equal(a, x.right, b, y.right);
}
}  // namespace

bool trees_equal(const LabeledTree& a, const LabeledTree& b) {
  if (a.node_count() != b.node_count()) return false;
  return subtrees_equal(a, a.root(), b, b.root());
}

}  // namespace maf
