#pragma once

#include <string>
#include <string_view>

#include "maf/tree.hpp"

namespace maf {

/// Parses a single `;`-terminated Newick expression into a rooted binary
/// labeled tree. Branch lengths (`:number`) are accepted and discarded;
/// internal-node labels and non-binary nodes are rejected.
LabeledTree parse_newick(std::string_view text);

/// Canonical serialization: stored child order, no branch lengths,
/// `;`-terminated. parse_newick(write_newick(t)) reproduces t exactly.
std::string write_newick(const LabeledTree& tree);

LabeledTree read_newick_file(const std::string& path);
void write_newick_file(const LabeledTree& tree, const std::string& path);

}  // namespace maf
