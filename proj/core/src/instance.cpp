#include "maf/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "maf/newick.hpp"

namespace maf {

Instance Instance::make(LabeledTree t1, LabeledTree t2) {
  Instance inst;
  for (const auto& [label, node] : t1.leaves()) {
    if (t2.leaf_of(label) == kNoNode) {
      throw LabelSetMismatch("label only in first tree: " + label);
    }
    inst.labels_.push_back(label);
  }
  for (const auto& [label, node] : t2.leaves()) {
    if (t1.leaf_of(label) == kNoNode) {
      throw LabelSetMismatch("label only in second tree: " + label);
    }
  }
  // std::map iteration is already sorted, so labels_ is lexicographic.
  inst.trees_[0] = std::move(t1);
  inst.trees_[1] = std::move(t2);
  for (int t = 0; t < 2; ++t) {
    const LabeledTree& tree = inst.trees_[t];
    inst.leaf_node_[t].resize(inst.labels_.size());
    inst.node_label_[t].assign(tree.node_count(), kNoLabel);
    for (LabelId l = 0; l < static_cast<LabelId>(inst.labels_.size()); ++l) {
      NodeId n = tree.leaf_of(inst.labels_[l]);
      inst.leaf_node_[t][l] = n;
      inst.node_label_[t][n] = l;
    }
  }
  return inst;
}

LabelId Instance::label_id(std::string_view name) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), name);
  if (it == labels_.end() || *it != name) return kNoLabel;
  return static_cast<LabelId>(it - labels_.begin());
}

TripletOrientation Instance::orient(Tree t, LabelId u, LabelId v,
                                    LabelId w) const {
  const LabeledTree& tree = this->tree(t);
  NodeId nu = leaf_node(t, u), nv = leaf_node(t, v), nw = leaf_node(t, w);
  NodeId uv = tree.lca(nu, nv);
  NodeId uw = tree.lca(nu, nw);
  NodeId vw = tree.lca(nv, nw);
  int duv = tree.node(uv).depth;
  int duw = tree.node(uw).depth;
  int dvw = tree.node(vw).depth;
  if (duv > duw && duv > dvw) return TripletOrientation::UV_W;
  if (duw > duv && duw > dvw) return TripletOrientation::UW_V;
  if (dvw > duv && dvw > duw) return TripletOrientation::VW_U;
  throw InternalError("triplet without a unique deepest pair");
}

bool Instance::triplet_consistent(LabelId u, LabelId v, LabelId w) const {
  return orient(Tree::T1, u, v, w) == orient(Tree::T2, u, v, w);
}

namespace {

struct PairHash {
  size_t operator()(const std::pair<int, int>& p) const {
    return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^
                                  static_cast<unsigned>(p.second));
  }
};

/// Canonical shape id of the restriction of a tree to a leaf set, over a
/// shared interning table. Two restrictions are isomorphic as leaf-labeled
/// rooted trees iff their ids match, which for binary trees is equivalent to
/// equal triplet orientations.
class RestrictionCanon {
 public:
  int canon(const Instance& inst, Tree t, std::span<const LabelId> leaves) {
    const LabeledTree& tree = inst.tree(t);
    items_.clear();
    for (LabelId l : leaves) items_.emplace_back(inst.leaf_node(t, l), l);
    std::sort(items_.begin(), items_.end(),
              [&](const auto& a, const auto& b) {
                return tree.node(a.first).tin < tree.node(b.first).tin;
              });
    return range_canon(tree, 0, items_.size());
  }

 private:
  // Leaves sorted by preorder time: every subtree is a contiguous range, and
  // the lca of a range is the lca of its two extremes.
  int range_canon(const LabeledTree& tree, size_t lo, size_t hi) {
    if (hi - lo == 1) return intern(-1, items_[lo].second);
    NodeId top = tree.lca(items_[lo].first, items_[hi - 1].first);
    NodeId left = tree.node(top).left;
    int cut_tout = tree.node(left).tout;
    size_t split = std::partition_point(
                       items_.begin() + lo, items_.begin() + hi,
                       [&](const auto& it) {
                         return tree.node(it.first).tin < cut_tout;
                       }) -
                   items_.begin();
    if (split == lo || split == hi) {
      throw InternalError("restriction split failed");
    }
    int a = range_canon(tree, lo, split);
    int b = range_canon(tree, split, hi);
    return intern(a, b);
  }

  int intern(int a, int b) {
    if (a > b) std::swap(a, b);
    auto [it, inserted] = table_.emplace(std::make_pair(a, b), next_);
    if (inserted) ++next_;
    return it->second;
  }

  std::vector<std::pair<NodeId, LabelId>> items_;
  std::unordered_map<std::pair<int, int>, int, PairHash> table_;
  int next_ = 0;
};

}  // namespace

bool Instance::is_compatible(std::span<const LabelId> leaves) const {
  if (leaves.size() <= 2) return true;
  RestrictionCanon canon;
  int c1 = canon.canon(*this, Tree::T1, leaves);
  int c2 = canon.canon(*this, Tree::T2, leaves);
  return c1 == c2;
}

std::vector<NodeId> Instance::steiner_nodes(
    Tree t, std::span<const LabelId> leaves) const {
  const LabeledTree& tree = this->tree(t);
  std::vector<NodeId> result;
  if (leaves.empty()) return result;
  if (leaves.size() == 1) {
    result.push_back(leaf_node(t, leaves[0]));
    return result;
  }
  NodeId top = leaf_node(t, leaves[0]);
  for (size_t i = 1; i < leaves.size(); ++i) {
    top = tree.lca(top, leaf_node(t, leaves[i]));
  }
  // Union of leaf-to-top paths, with a visited set so each node is walked once.
  std::vector<char> seen(tree.node_count(), 0);
  for (LabelId l : leaves) {
    NodeId cur = leaf_node(t, l);
    while (!seen[cur]) {
      seen[cur] = 1;
      result.push_back(cur);
      if (cur == top) break;
      cur = tree.node(cur).parent;
    }
  }
  return result;
}

Instance Instance::augment_with_rho() const {
  if (label_id(kRhoLabel) != kNoLabel) {
    throw ReservedLabelInUse("label _rho_ already present");
  }
  std::array<LabeledTree, 2> augmented;
  for (int t = 0; t < 2; ++t) {
    TreeBuilder b;
    NodeId old_root = b.copy_subtree(trees_[t], trees_[t].root());
    NodeId rho = b.add_leaf(kRhoLabel);
    augmented[t] = b.finish(b.add_internal(old_root, rho));
  }
  return make(std::move(augmented[0]), std::move(augmented[1]));
}

std::string Instance::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  };
  mix(write_newick(trees_[0]));
  mix("\n");
  mix(write_newick(trees_[1]));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace maf
