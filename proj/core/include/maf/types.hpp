#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace maf {

using NodeId = std::int32_t;
using LabelId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr LabelId kNoLabel = -1;

/// Which of the two input trees (and derived forests) is addressed.
enum class Tree : int { T1 = 0, T2 = 1 };

inline int index_of(Tree t) { return static_cast<int>(t); }
inline Tree other(Tree t) { return t == Tree::T1 ? Tree::T2 : Tree::T1; }

/// Orientation of an ordered leaf triple (u, v, w) in a rooted binary tree:
/// the unique pair whose lca is a strict descendant of the triple's lca.
enum class TripletOrientation { UV_W, UW_V, VW_U };

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MAF_ERROR_TYPE(Name)          \
  struct Name : Error {               \
    using Error::Error;               \
  }

MAF_ERROR_TYPE(MalformedNewick);
MAF_ERROR_TYPE(NonBinaryNode);
MAF_ERROR_TYPE(DuplicateLabel);
MAF_ERROR_TYPE(UnlabeledLeaf);
MAF_ERROR_TYPE(LabelSetMismatch);
MAF_ERROR_TYPE(DisconnectedLeaves);
MAF_ERROR_TYPE(UndefinedParent);
MAF_ERROR_TYPE(NotSiblings);
MAF_ERROR_TYPE(NotSiblingsInF1);
MAF_ERROR_TYPE(NoActiveLeaves);
MAF_ERROR_TYPE(ReservedLabelInUse);
MAF_ERROR_TYPE(ActiveLeavesRemain);
MAF_ERROR_TYPE(PartitionMismatch);
MAF_ERROR_TYPE(InstanceTooLarge);
MAF_ERROR_TYPE(NotAPartition);
MAF_ERROR_TYPE(InvalidInputForest);
MAF_ERROR_TYPE(TraceEventMissing);
MAF_ERROR_TYPE(InvalidSize);
MAF_ERROR_TYPE(TooSmall);
MAF_ERROR_TYPE(InternalError);

#undef MAF_ERROR_TYPE

}  // namespace maf
