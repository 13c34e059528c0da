#include "maf/gen.hpp"

#include <algorithm>
#include <vector>

#include "maf/rng.hpp"

namespace maf {

namespace {

NodeId build_random(TreeBuilder& b, std::vector<std::string>& labels, int lo,
                    int hi, std::mt19937_64& shape, std::mt19937_64& subset) {
  int n = hi - lo;
  if (n == 1) return b.add_leaf(labels[lo]);
  int left = static_cast<int>(uniform_range(shape, 1, n - 1));
  // Uniform subset of the labels for the left side: shuffle, take a prefix.
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(uniform_below(subset, i + 1));
    std::swap(labels[lo + i], labels[lo + j]);
  }
  NodeId l = build_random(b, labels, lo, lo + left, shape, subset);
  NodeId r = build_random(b, labels, lo + left, hi, shape, subset);
  return b.add_internal(l, r);
}

/// Mutable scratch tree for edit operations.
struct Scratch {
  struct Node {
    int parent = -1;
    int left = -1;
    int right = -1;
    std::string label;
  };
  std::vector<Node> nodes;
  int root = -1;

  static Scratch from(const LabeledTree& t) {
    Scratch s;
    s.nodes.resize(t.node_count());
    for (NodeId i = 0; i < t.node_count(); ++i) {
      s.nodes[i] = {t.node(i).parent, t.node(i).left, t.node(i).right,
                    t.node(i).label};
    }
    s.root = t.root();
    return s;
  }

  void replace_child(int parent, int was, int now) {
    if (nodes[parent].left == was) {
      nodes[parent].left = now;
    } else {
      nodes[parent].right = now;
    }
    nodes[now].parent = parent;
  }

  void preorder(int from, std::vector<int>& out) const {
    std::vector<int> stack{from};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      out.push_back(cur);
      if (nodes[cur].right != -1) stack.push_back(nodes[cur].right);
      if (nodes[cur].left != -1) stack.push_back(nodes[cur].left);
    }
  }

  NodeId emit(TreeBuilder& b, int cur) const {
    if (nodes[cur].left == -1) return b.add_leaf(nodes[cur].label);
    NodeId l = emit(b, nodes[cur].left);
    NodeId r = emit(b, nodes[cur].right);
    return b.add_internal(l, r);
  }
};

}  // namespace

LabeledTree random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidSize("tree needs at least one leaf");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "L" + std::to_string(i);
  std::mt19937_64 shape(split_seed(seed, 1));
  std::mt19937_64 subset(split_seed(seed, 2));
  TreeBuilder b;
  NodeId root = build_random(b, labels, 0, n, shape, subset);
  return b.finish(root);
}

LabeledTree random_spr(const LabeledTree& tree, int k, std::uint64_t seed) {
  if (k < 0) throw InvalidSize("negative edit count");
  if (k > 0 && tree.leaf_count() < 3) {
    throw TooSmall("edits need at least three leaves");
  }
  Scratch s = Scratch::from(tree);
  std::mt19937_64 rng(split_seed(seed, 3));
  std::vector<int> order;
  for (int done = 0; done < k;) {
    order.clear();
    s.preorder(s.root, order);
    // Pruned subtree root: uniform over non-root nodes, in preorder position.
    std::vector<int> candidates;
    for (int v : order) {
      if (v != s.root) candidates.push_back(v);
    }
    int prune = candidates[uniform_below(rng, candidates.size())];
    int parent = s.nodes[prune].parent;
    int sibling = s.nodes[parent].left == prune ? s.nodes[parent].right
                                                : s.nodes[parent].left;
    int grand = s.nodes[parent].parent;

    // Detach and suppress the vacated node. When the suppressed node had a
    // parent, the spliced edge (sibling below grand) is the one whose split
    // would restore the original tree, so it is not a valid regraft target.
    s.nodes[prune].parent = -1;
    int forbidden = -1;
    if (grand == -1) {
      s.nodes[sibling].parent = -1;
      s.root = sibling;
    } else {
      s.replace_child(grand, parent, sibling);
      forbidden = sibling;
    }

    order.clear();
    s.preorder(s.root, order);
    std::vector<int> edges;
    for (int v : order) {
      if (v != s.root && v != forbidden) edges.push_back(v);
    }
    if (edges.empty()) {
      // Residual tree too small to accept this subtree elsewhere; undo and
      // redraw. Keeps the draw sequence deterministic.
      if (grand == -1) {
        s.root = parent;
        s.nodes[parent].parent = -1;
      } else {
        s.replace_child(grand, sibling, parent);
      }
      s.nodes[sibling].parent = parent;
      s.nodes[prune].parent = parent;
      continue;
    }
    int target = edges[uniform_below(rng, edges.size())];
    int tparent = s.nodes[target].parent;
    s.replace_child(tparent, target, parent);
    s.nodes[parent].left = target;
    s.nodes[parent].right = prune;
    s.nodes[target].parent = parent;
    s.nodes[prune].parent = parent;
    ++done;
  }
  TreeBuilder b;
  NodeId root = s.emit(b, s.root);
  return b.finish(root);
}

GeneratedInstance make_instance(int n, int k, std::uint64_t seed) {
  LabeledTree t1 = random_tree(n, split_seed(seed, 10));
  LabeledTree t2 = random_spr(t1, k, split_seed(seed, 11));
  return GeneratedInstance{Instance::make(std::move(t1), std::move(t2)), k};
}

}  // namespace maf
