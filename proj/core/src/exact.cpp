#include "maf/exact.hpp"

#include <algorithm>
#include <array>

namespace maf {

bool verify_agreement_forest(const Instance& inst,
                             const std::vector<std::vector<LabelId>>& blocks) {
  int n = inst.label_count();
  std::vector<int> hits(n, 0);
  for (const auto& b : blocks) {
    for (LabelId l : b) {
      if (l < 0 || l >= n) throw NotAPartition("label out of range");
      ++hits[l];
    }
  }
  for (int c : hits) {
    if (c != 1) throw NotAPartition("blocks do not cover each label once");
  }
  for (const auto& b : blocks) {
    if (!inst.is_compatible(b)) return false;
  }
  for (int t = 0; t < 2; ++t) {
    std::vector<int> owner(inst.tree(static_cast<Tree>(t)).node_count(), -1);
    for (size_t i = 0; i < blocks.size(); ++i) {
      for (NodeId n2 : inst.steiner_nodes(static_cast<Tree>(t), blocks[i])) {
        if (owner[n2] != -1) return false;
        owner[n2] = static_cast<int>(i);
      }
    }
  }
  return true;
}

namespace {

/// Depth-first search over restricted-growth assignments into exactly `p`
/// blocks, with incremental Steiner occupancy and triplet checks. The first
/// assignment found is the lexicographically least feasible encoding.
class PartitionSearch {
 public:
  PartitionSearch(const Instance& inst, int target_blocks)
      : inst_(inst), p_(target_blocks), n_(inst.label_count()) {
    for (int t = 0; t < 2; ++t) {
      owner_[t].assign(inst.tree(static_cast<Tree>(t)).node_count(), -1);
      lca_[t].assign(p_, kNoNode);
    }
    block_of_.assign(n_, -1);
    blocks_.assign(p_, {});
  }

  bool run(std::vector<int>& out_assignment) {
    if (descend(0, 0)) {
      out_assignment = block_of_;
      return true;
    }
    return false;
  }

 private:
  struct Undo {
    std::array<std::vector<NodeId>, 2> claimed;
    std::array<NodeId, 2> old_lca{kNoNode, kNoNode};
  };

  bool descend(LabelId next, int used) {
    if (next == n_) return used == p_;
    int slack = n_ - next - (p_ - used);  // labels to spare for new blocks
    int max_block = std::min(used, p_ - 1);
    for (int b = 0; b <= max_block; ++b) {
      if (b == used && slack < 0) break;
      Undo undo;
      if (!try_assign(next, b, undo)) {
        revert(b, undo);
        continue;
      }
      block_of_[next] = b;
      if (descend(next + 1, std::max(used, b + 1))) return true;
      block_of_[next] = -1;
      blocks_[b].pop_back();
      revert(b, undo);
    }
    return false;
  }

  bool try_assign(LabelId l, int b, Undo& undo) {
    undo.old_lca[0] = lca_[0][b];
    undo.old_lca[1] = lca_[1][b];
    const auto& members = blocks_[b];
    for (size_t i = 0; i + 1 < members.size(); ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        if (!inst_.triplet_consistent(members[i], members[j], l)) return false;
      }
    }
    for (int t = 0; t < 2; ++t) {
      if (!occupy(static_cast<Tree>(t), l, b, undo.claimed[t])) return false;
    }
    blocks_[b].push_back(l);
    return true;
  }

  bool occupy(Tree t, LabelId l, int b, std::vector<NodeId>& claimed) {
    auto& owner = owner_[index_of(t)];
    const LabeledTree& tree = inst_.tree(t);
    NodeId leaf = inst_.leaf_node(t, l);
    auto claim = [&](NodeId node) {
      if (owner[node] == b) return true;
      if (owner[node] != -1) return false;
      owner[node] = b;
      claimed.push_back(node);
      return true;
    };
    NodeId old_lca = lca_[index_of(t)][b];
    if (old_lca == kNoNode) {
      if (!claim(leaf)) return false;
      lca_[index_of(t)][b] = leaf;
      return true;
    }
    NodeId new_lca = tree.lca(old_lca, leaf);
    for (NodeId cur = leaf; cur != new_lca; cur = tree.node(cur).parent) {
      if (!claim(cur)) return false;
    }
    for (NodeId cur = old_lca; cur != new_lca; cur = tree.node(cur).parent) {
      if (!claim(cur)) return false;
    }
    if (!claim(new_lca)) return false;
    lca_[index_of(t)][b] = new_lca;
    return true;
  }

  void revert(int b, const Undo& undo) {
    for (int t = 0; t < 2; ++t) {
      for (NodeId n : undo.claimed[t]) owner_[t][n] = -1;
      lca_[t][b] = undo.old_lca[t];
    }
  }

  const Instance& inst_;
  int p_;
  int n_;
  std::array<std::vector<int>, 2> owner_;
  std::array<std::vector<NodeId>, 2> lca_;
  std::vector<int> block_of_;
  std::vector<std::vector<LabelId>> blocks_;
};

}  // namespace

ExactResult exact_maf(const Instance& inst, int cap) {
  int n = inst.label_count();
  if (n > cap) throw InstanceTooLarge("exact solver cap exceeded");
  if (n == 0) throw InvalidSize("empty instance");
  for (int p = 1; p <= n; ++p) {
    PartitionSearch search(inst, p);
    std::vector<int> assignment;
    if (search.run(assignment)) {
      ExactResult res;
      res.value = p - 1;
      res.witness.assign(p, {});
      for (LabelId l = 0; l < n; ++l) {
        res.witness[assignment[l]].push_back(l);
      }
      std::sort(res.witness.begin(), res.witness.end());
      return res;
    }
  }
  throw InternalError("no feasible partition found");
}

}  // namespace maf
