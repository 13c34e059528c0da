#include "maf/refine.hpp"

#include <algorithm>

namespace maf {

namespace {

/// Node occupancy per tree, so a candidate merge only has to look at the
/// union's Steiner nodes instead of re-verifying the whole forest.
struct Occupancy {
  std::array<std::vector<int>, 2> owner;

  void build(const Instance& inst,
             const std::vector<std::vector<LabelId>>& blocks) {
    for (int t = 0; t < 2; ++t) {
      owner[t].assign(inst.tree(static_cast<Tree>(t)).node_count(), -1);
      for (size_t i = 0; i < blocks.size(); ++i) {
        for (NodeId n : inst.steiner_nodes(static_cast<Tree>(t), blocks[i])) {
          owner[t][n] = static_cast<int>(i);
        }
      }
    }
  }

  bool union_fits(const Instance& inst, const std::vector<LabelId>& merged,
                  int i, int j) const {
    for (int t = 0; t < 2; ++t) {
      for (NodeId n : inst.steiner_nodes(static_cast<Tree>(t), merged)) {
        int o = owner[t][n];
        if (o != -1 && o != i && o != j) return false;
      }
    }
    return true;
  }
};

}  // namespace

AgreementForest greedy_merge(const Instance& inst,
                             const AgreementForest& forest) {
  if (!verify_agreement_forest(inst, forest.blocks)) {
    throw InvalidInputForest("greedy refinement of an infeasible forest");
  }
  std::vector<std::vector<LabelId>> blocks = forest.blocks;
  sort_blocks(blocks);
  Occupancy occ;
  occ.build(inst, blocks);
  bool merged_any = true;
  std::vector<LabelId> merged;
  while (merged_any) {
    merged_any = false;
    for (size_t i = 0; i < blocks.size() && !merged_any; ++i) {
      for (size_t j = i + 1; j < blocks.size() && !merged_any; ++j) {
        merged.clear();
        merged.resize(blocks[i].size() + blocks[j].size());
        std::merge(blocks[i].begin(), blocks[i].end(), blocks[j].begin(),
                   blocks[j].end(), merged.begin());
        if (!occ.union_fits(inst, merged, static_cast<int>(i),
                            static_cast<int>(j))) {
          continue;
        }
        if (!inst.is_compatible(merged)) continue;
        blocks[i] = merged;
        blocks.erase(blocks.begin() + j);
        sort_blocks(blocks);
        occ.build(inst, blocks);
        merged_any = true;
      }
    }
  }
  AgreementForest out;
  out.blocks = std::move(blocks);
  if (!verify_agreement_forest(inst, out.blocks)) {
    throw InternalError("greedy refinement broke the forest");
  }
  return out;
}

}  // namespace maf
