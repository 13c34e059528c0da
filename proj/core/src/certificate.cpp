#include "maf/certificate.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "maf/dual.hpp"
#include "maf/exact.hpp"

namespace maf {

namespace {

using Json = nlohmann::ordered_json;

Json blocks_to_json(const Instance& inst,
                    const std::vector<std::vector<LabelId>>& blocks) {
  Json arr = Json::array();
  for (const auto& block : blocks) {
    Json b = Json::array();
    for (LabelId l : block) b.push_back(inst.label_name(l));
    arr.push_back(std::move(b));
  }
  return arr;
}

Json edges_to_json(const Instance& inst, Tree t,
                   const std::vector<NodeId>& edges) {
  std::vector<std::string> paths;
  for (NodeId e : edges) paths.push_back(inst.tree(t).node_path(e));
  std::sort(paths.begin(), paths.end());
  return Json(paths);
}

}  // namespace

std::string certificate_json(const Instance& inst, const SolveResult& result,
                             std::uint64_t seed,
                             const AgreementForest* greedy) {
  Json doc;
  doc["format"] = "maf-certificate-v1";
  doc["instance_digest"] = inst.digest();
  doc["n"] = inst.label_count();
  doc["algorithm"] = result.algorithm;
  doc["seed"] = seed;
  doc["value"] = result.forest.value();
  doc["blocks"] = blocks_to_json(inst, result.forest.blocks);
  if (greedy) {
    doc["greedy_value"] = greedy->value();
    doc["greedy_blocks"] = blocks_to_json(inst, greedy->blocks);
  }
  doc["deleted_edges"] = {
      {"t1", edges_to_json(inst, Tree::T1, result.deleted_edges[0])},
      {"t2", edges_to_json(inst, Tree::T2, result.deleted_edges[1])},
  };
  Json y_leaf = Json::object();
  for (LabelId l = 0; l < inst.label_count(); ++l) {
    if (result.dual.y_leaf[l] != 0) {
      y_leaf[inst.label_name(l)] = result.dual.y_leaf[l];
    }
  }
  Json y_internal = Json::object();
  for (int t = 0; t < 2; ++t) {
    Json m = Json::object();
    std::vector<std::pair<std::string, int>> entries;
    for (const auto& [node, y] : result.dual.y_internal[t]) {
      if (y != 0) {
        entries.emplace_back(inst.tree(static_cast<Tree>(t)).node_path(node),
                             y);
      }
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& [path, y] : entries) m[path] = y;
    y_internal[t == 0 ? "t1" : "t2"] = std::move(m);
  }
  doc["dual"] = {{"objective", result.dual.objective},
                 {"y_leaf", std::move(y_leaf)},
                 {"y_internal", std::move(y_internal)}};
  doc["delta_p"] = result.accounting.delta_p;
  doc["starred_ops"] = result.accounting.starred_ops;
  Json trace = Json::array();
  for (const CutEvent& ev : result.trace) {
    Json e;
    e["iter"] = ev.iteration;
    e["forest"] = ev.forest == Tree::T1 ? "t1" : "t2";
    e["kind"] = to_string(ev.kind);
    e["edge"] = inst.tree(ev.forest).node_path(ev.edge);
    Json cut = Json::array();
    for (LabelId l : ev.cut_set) cut.push_back(inst.label_name(l));
    e["cut_set"] = std::move(cut);
    if (ev.actor_u != kNoLabel) {
      e["actors"] = {inst.label_name(ev.actor_u), inst.label_name(ev.actor_v)};
    }
    if (ev.deactivated != kNoLabel) {
      e["deactivated"] = inst.label_name(ev.deactivated);
    }
    trace.push_back(std::move(e));
  }
  doc["trace"] = std::move(trace);
  return doc.dump(2) + "\n";
}

namespace {

CertificateCheck fail(const std::string& why) { return {false, why}; }

}  // namespace

CertificateCheck verify_certificate(const Instance& inst,
                                    const std::string& json_text,
                                    int exhaustive_cap) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const std::exception& e) {
    return fail(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("instance_digest").get<std::string>() != inst.digest()) {
      return fail("instance digest mismatch");
    }
    std::string algo = doc.at("algorithm").get<std::string>();
    int ratio_den = algo == "redblue" ? 2 : 3;

    // Blocks verify against the instance.
    std::vector<std::vector<LabelId>> blocks;
    for (const auto& b : doc.at("blocks")) {
      std::vector<LabelId> block;
      for (const auto& name : b) {
        LabelId l = inst.label_id(name.get<std::string>());
        if (l == kNoLabel) return fail("unknown label in blocks");
        block.push_back(l);
      }
      blocks.push_back(std::move(block));
    }
    if (!verify_agreement_forest(inst, blocks)) {
      return fail("blocks are not an agreement forest");
    }
    if (doc.at("value").get<int>() !=
        static_cast<int>(blocks.size()) - 1) {
      return fail("declared value disagrees with the block count");
    }

    // Both forests, rebuilt from the deleted edges, must induce the blocks.
    std::vector<std::vector<LabelId>> sorted = blocks;
    sort_blocks(sorted);
    int deleted_t2 = 0;
    for (int t = 0; t < 2; ++t) {
      Tree tr = static_cast<Tree>(t);
      ForestView f(inst.tree(tr));
      for (const auto& path :
           doc.at("deleted_edges").at(t == 0 ? "t1" : "t2")) {
        NodeId n = inst.tree(tr).node_at_path(path.get<std::string>());
        if (n == kNoNode) return fail("deleted edge path not in the tree");
        f.delete_edge(n);
      }
      if (t == 1) deleted_t2 = f.deleted_count();
      std::vector<std::vector<LabelId>> part;
      std::set<NodeId> seen;
      for (LabelId l = 0; l < inst.label_count(); ++l) {
        NodeId root = f.component_root(inst.leaf_node(tr, l));
        if (!seen.insert(root).second) continue;
        std::vector<LabelId> comp;
        for (NodeId leaf : f.component_leaf_nodes(root)) {
          comp.push_back(inst.label_of_node(tr, leaf));
        }
        std::sort(comp.begin(), comp.end());
        part.push_back(std::move(comp));
      }
      sort_blocks(part);
      if (part != sorted) {
        return fail("deleted edges do not induce the declared blocks");
      }
    }
    if (doc.at("delta_p").get<int>() != deleted_t2) {
      return fail("delta_p disagrees with the deleted edge list");
    }

    // Dual recomputation: objective, sign constraints, loads.
    std::vector<int> y_leaf(inst.label_count(), 0);
    for (const auto& [name, val] : doc.at("dual").at("y_leaf").items()) {
      LabelId l = inst.label_id(name);
      if (l == kNoLabel) return fail("unknown label in y_leaf");
      y_leaf[l] = val.get<int>();
      if (y_leaf[l] < 0 || y_leaf[l] > 1) return fail("leaf value out of range");
    }
    long long y_sum = 0;
    for (int v : y_leaf) y_sum += v;
    std::array<std::map<NodeId, int>, 2> y_internal;
    for (int t = 0; t < 2; ++t) {
      for (const auto& [path, val] :
           doc.at("dual").at("y_internal").at(t == 0 ? "t1" : "t2").items()) {
        NodeId n = inst.tree(static_cast<Tree>(t)).node_at_path(path);
        if (n == kNoNode || inst.tree(static_cast<Tree>(t)).is_leaf(n)) {
          return fail("bad internal node path in the dual");
        }
        int y = val.get<int>();
        if (y > 0) return fail("positive internal value");
        y_internal[t][n] = y;
        y_sum += y;
      }
    }
    // Terminal state: no active leaves, so the objective is the plain sum
    // minus one.
    long long objective = y_sum - 1;
    if (doc.at("dual").at("objective").get<long long>() != objective) {
      return fail("dual objective does not recompute");
    }
    if (ratio_den * objective < deleted_t2) {
      return fail("dual objective below the guaranteed fraction");
    }

    if (inst.label_count() <= exhaustive_cap) {
      int n = inst.label_count();
      auto load_of = [&](const std::vector<LabelId>& subset) {
        long long load = 0;
        for (LabelId u : subset) load += y_leaf[u];
        for (int t = 0; t < 2; ++t) {
          for (NodeId nd :
               inst.steiner_nodes(static_cast<Tree>(t), subset)) {
            if (!inst.tree(static_cast<Tree>(t)).is_leaf(nd)) {
              auto it = y_internal[t].find(nd);
              if (it != y_internal[t].end()) load += it->second;
            }
          }
        }
        return load;
      };
      std::vector<LabelId> subset;
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        subset.clear();
        for (int i = 0; i < n; ++i) {
          if (mask & (1u << i)) subset.push_back(i);
        }
        if (!inst.is_compatible(subset)) continue;
        if (load_of(subset) > 1) return fail("compatible set overloaded");
      }
    }
  } catch (const std::exception& e) {
    return fail(std::string("certificate verification error: ") + e.what());
  }
  return {true, ""};
}

}  // namespace maf
