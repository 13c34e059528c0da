#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "maf/exact.hpp"
#include "maf/gen.hpp"
#include "maf/newick.hpp"
#include "oracles.hpp"

using namespace maf;
using namespace testutil;

TEST_CASE("single block on identical trees verifies") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  CHECK(verify_agreement_forest(inst, {{0, 1, 2}}));
}

TEST_CASE("steiner overlap is rejected") {
  // Both blocks route through the second tree's root.
  Instance inst = inst_of("((a,b),(c,d));", "((a,c),(b,d));");
  CHECK_FALSE(verify_agreement_forest(
      inst, {ids(inst, {"a", "b"}), ids(inst, {"c", "d"})}));
}

TEST_CASE("incompatible block is rejected") {
  Instance inst = inst_of("((a,b),c);", "((a,c),b);");
  CHECK_FALSE(verify_agreement_forest(inst, {{0, 1, 2}}));
}

TEST_CASE("non-partitions are errors") {
  Instance inst = inst_of("((a,b),c);", "((a,b),c);");
  CHECK_THROWS_AS(verify_agreement_forest(inst, {{0, 1}}), NotAPartition);
  CHECK_THROWS_AS(verify_agreement_forest(inst, {{0, 1, 2}, {2}}),
                  NotAPartition);
}

TEST_CASE("identical trees have value zero") {
  for (int n : {1, 2, 5, 8}) {
    LabeledTree t = random_tree(n, 77);
    Instance inst = Instance::make(parse_newick(write_newick(t)),
                                   parse_newick(write_newick(t)));
    ExactResult res = exact_maf(inst);
    CHECK(res.value == 0);
    CHECK(res.witness.size() == 1);
  }
}

TEST_CASE("crossed quartet needs two cuts") {
  Instance inst = inst_of("((a,b),(c,d));", "((a,c),(b,d));");
  ExactResult res = exact_maf(inst);
  CHECK(res.value == 2);
  CHECK(verify_agreement_forest(inst, res.witness));
}

TEST_CASE("three-leaf disagreement needs one cut") {
  Instance inst = inst_of("((a,b),c);", "((a,c),b);");
  ExactResult res = exact_maf(inst);
  CHECK(res.value == 1);
  // Lexicographically least optimum: {a,b} | {c}.
  CHECK(res.witness ==
        std::vector<std::vector<LabelId>>{ids(inst, {"a", "b"}),
                                          ids(inst, {"c"})});
}

TEST_CASE("cap is enforced") {
  auto gi = make_instance(11, 0, 5);
  CHECK_THROWS_AS(exact_maf(gi.instance, 10), InstanceTooLarge);
}

TEST_CASE("witness always verifies and the value is minimal over partitions") {
  // Cross-check against a plain restricted-growth enumeration.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto gi = make_instance(6, 2, seed);
    const Instance& inst = gi.instance;
    ExactResult res = exact_maf(gi.instance);
    CHECK(verify_agreement_forest(inst, res.witness));
    CHECK(static_cast<int>(res.witness.size()) == res.value + 1);

    int best = 1 << 20;
    std::vector<int> rgs(6, 0);
    // Odometer over restricted-growth strings.
    while (true) {
      int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
      std::vector<std::vector<LabelId>> part(blocks);
      for (int i = 0; i < 6; ++i) part[rgs[i]].push_back(i);
      if (verify_agreement_forest(inst, part)) {
        best = std::min(best, blocks - 1);
      }
      int i = 5;
      for (; i >= 1; --i) {
        int cap = 0;
        for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
        if (rgs[i] <= cap) {
          ++rgs[i];
          for (int j = i + 1; j < 6; ++j) rgs[j] = 0;
          break;
        }
        rgs[i] = 0;
      }
      if (i == 0) break;
    }
    CHECK(res.value == best);
  }
}
