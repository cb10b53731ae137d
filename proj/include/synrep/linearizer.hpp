#pragma once

#include <cstddef>
#include <vector>

#include "synrep/tree.hpp"

namespace synrep {

/// One depth-first traversal of a tree: internal-node labels in emission
/// order, and for each word (in sentence order) the index of its
/// preterminal's emission.
struct Linearization {
  std::vector<LabelId> label_ids;
  std::vector<std::size_t> word_positions;

  std::size_t length() const noexcept { return label_ids.size(); }

  friend bool operator==(const Linearization&, const Linearization&) = default;
};

struct LinearizationPair {
  Linearization left;
  Linearization right;

  std::size_t word_count() const noexcept { return left.word_positions.size(); }
};

/// Pre-order walk, children left to right; labels are emitted on entry only.
Linearization linearize_left(const ConstituentTree& tree, const LabelVocabulary& vocab);

/// Pre-order walk, children right to left; labels are emitted on entry only.
/// word_positions stay indexed by sentence order.
Linearization linearize_right(const ConstituentTree& tree, const LabelVocabulary& vocab);

/// Both traversals; throws DimensionMismatch if the pair invariants fail.
LinearizationPair linearize_pair(const ConstituentTree& tree, const LabelVocabulary& vocab);

}  // namespace synrep
