#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "maf/gen.hpp"
#include "maf/newick.hpp"
#include "maf/redblue.hpp"
#include "maf/solver_state.hpp"
#include "oracles.hpp"

using namespace maf;
using namespace testutil;

TEST_CASE("parent of active sets on a fresh state") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  const LabeledTree& t = inst.tree(Tree::T1);
  LabelId a = inst.label_id("a"), b = inst.label_id("b"),
          c = inst.label_id("c");

  auto pa = state.parent_of_active(Tree::T1, a);
  REQUIRE(pa);
  CHECK(*pa == t.lca(t.leaf_of("a"), t.leaf_of("b")));

  LabelId ab[] = {a, b};
  auto pab = state.parent_of_active_set(Tree::T1, ab);
  REQUIRE(pab);
  CHECK(*pab == t.root());

  // Once c sits alone in its severed tree, it has no parent there.
  state.cut_off(Tree::T1, {&c, 1}, CutKind::ProcedureCut);
  state.deactivate_cut(a);
  state.deactivate_cut(b);
  CHECK_FALSE(state.parent_of_active(Tree::T1, c).has_value());
}

TEST_CASE("cut_off severs exactly one edge and adds one tree") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  LabelId a = inst.label_id("a");
  int trees_before = state.forest(Tree::T1).leafy_component_count();
  int deleted_before = state.forest(Tree::T1).deleted_count();

  auto& ev = state.cut_off(Tree::T1, {&a, 1}, CutKind::ProcedureCut);
  CHECK(state.forest(Tree::T1).deleted_count() == deleted_before + 1);
  CHECK(state.forest(Tree::T1).leafy_component_count() == trees_before + 1);
  CHECK(state.forest(Tree::T1).deleted(ev.edge));
  CHECK(ev.cut_set == std::vector<LabelId>{a});

  // The severed component holds exactly the cut leaf.
  auto comp = state.labels_in_component(
      Tree::T1, state.leaf_node(Tree::T1, a));
  CHECK(comp == std::vector<LabelId>{a});
}

TEST_CASE("cut_off of a two-leaf subtree cuts below the root") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  auto w = ids(inst, {"a", "b"});
  auto& ev = state.cut_off(Tree::T1, w, CutKind::ProcedureCut);
  const LabeledTree& t = inst.tree(Tree::T1);
  CHECK(ev.edge == t.node(t.root()).left);
}

TEST_CASE("cut_off without another active leaf is rejected") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  LabelId c = inst.label_id("c");
  state.cut_off(Tree::T1, {&c, 1}, CutKind::ProcedureCut);
  state.deactivate_cut(inst.label_id("a"));
  state.deactivate_cut(inst.label_id("b"));
  CHECK_THROWS_AS(state.cut_off(Tree::T1, {&c, 1}, CutKind::ProcedureCut),
                  UndefinedParent);
}

TEST_CASE("merge bookkeeping") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  LabelId a = inst.label_id("a"), b = inst.label_id("b"),
          c = inst.label_id("c");
  state.merge_active(a, b);
  CHECK_FALSE(state.is_active(a));
  CHECK(state.merge_record(a).merged);
  CHECK(state.merge_record(a).into == b);
  CHECK(state.active_count() == 2);
  // b now represents {a,b} and pairs with c at the root.
  state.merge_active(b, c);
  CHECK(state.active_count() == 1);
}

TEST_CASE("merge of non-siblings is rejected") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  CHECK_THROWS_AS(state.merge_active(inst.label_id("a"), inst.label_id("c")),
                  NotSiblings);
}

TEST_CASE("minimal incompatible set on the three-leaf instance") {
  Instance inst = inst_of("((a,b),c);", "((a,c),b);");
  SolverState state(inst);
  auto split = find_minimal_incompatible(state);
  REQUIRE(split);
  CHECK(names_of(inst, split->r) == std::vector<std::string>{"a", "b"});
  CHECK(names_of(inst, split->b) == std::vector<std::string>{"c"});
  CHECK(split->lca1_union == inst.tree(Tree::T1).root());
}

TEST_CASE("minimal incompatible set absent on identical trees") {
  Instance inst = inst_of("((a,b),(c,d));", "((a,b),(c,d));");
  SolverState state(inst);
  CHECK_FALSE(find_minimal_incompatible(state).has_value());
}

TEST_CASE("descent enters the incompatible child") {
  Instance inst = inst_of("(((a,b),c),d);", "(((a,c),b),d);");
  SolverState state(inst);
  auto split = find_minimal_incompatible(state);
  REQUIRE(split);
  CHECK(names_of(inst, split->r) == std::vector<std::string>{"a", "b"});
  CHECK(names_of(inst, split->b) == std::vector<std::string>{"c"});
}

TEST_CASE("split invariants hold on random instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto gi = make_instance(4 + static_cast<int>(seed % 6),
                            1 + static_cast<int>(seed % 3), seed);
    const Instance& inst = gi.instance;
    SolverState state(inst);
    preprocess(state);
    if (state.active_count() == 0) continue;
    auto split = find_minimal_incompatible(state);
    REQUIRE(split.has_value());
    // Both sides compatible, union incompatible.
    CHECK(slow_compatible(inst, split->r));
    CHECK(slow_compatible(inst, split->b));
    std::vector<LabelId> un = split->r;
    un.insert(un.end(), split->b.begin(), split->b.end());
    std::sort(un.begin(), un.end());
    CHECK_FALSE(slow_compatible(inst, un));
    // Shared parent in the first forest.
    auto pr = state.parent_of_active_set(Tree::T1, split->r);
    auto pb = state.parent_of_active_set(Tree::T1, split->b);
    REQUIRE(pr);
    REQUIRE(pb);
    CHECK(*pr == *pb);
    CHECK(*pr == split->lca1_union);
    // lca_2(R) equals lca_2(R u B).
    const LabeledTree& t2 = inst.tree(Tree::T2);
    NodeId m = inst.leaf_node(Tree::T2, un[0]);
    for (LabelId l : un) m = t2.lca(m, inst.leaf_node(Tree::T2, l));
    NodeId mr = inst.leaf_node(Tree::T2, split->r[0]);
    for (LabelId l : split->r) mr = t2.lca(mr, inst.leaf_node(Tree::T2, l));
    CHECK(m == mr);
  }
}

TEST_CASE("find_minimal_incompatible requires active leaves") {
  Instance inst = inst_of("(a,b);", "(a,b);");
  SolverState state(inst);
  state.deactivate_cut(0);
  state.deactivate_cut(1);
  CHECK_THROWS_AS(find_minimal_incompatible(state), NoActiveLeaves);
}

TEST_CASE("extract_forest demands termination") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  CHECK_THROWS_AS(extract_forest(state), ActiveLeavesRemain);
}

TEST_CASE("extract_forest groups leaves by component") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  LabelId c = inst.label_id("c");
  state.cut_off(Tree::T1, {&c, 1}, CutKind::ProcedureCut);
  state.cut_off(Tree::T2, {&c, 1}, CutKind::ProcedureCut);
  for (LabelId l : state.active_labels()) state.deactivate_cut(l);
  AgreementForest f = extract_forest(state);
  CHECK(f.value() == 1);
  REQUIRE(f.blocks.size() == 2);
  CHECK(names_of(inst, f.blocks[0]) == std::vector<std::string>{"a", "b"});
  CHECK(names_of(inst, f.blocks[1]) == std::vector<std::string>{"c"});
}

TEST_CASE("extract_forest flags partition disagreement") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  SolverState state(inst);
  LabelId c = inst.label_id("c");
  state.cut_off(Tree::T2, {&c, 1}, CutKind::ProcedureCut);
  for (LabelId l : state.active_labels()) state.deactivate_cut(l);
  CHECK_THROWS_AS(extract_forest(state), PartitionMismatch);
}
