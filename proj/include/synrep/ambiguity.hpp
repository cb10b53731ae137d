#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synrep/tree.hpp"

namespace synrep {

inline constexpr std::size_t kMaxEnumerationWords = 6;
inline constexpr std::size_t kMaxEnumerationChildren = 3;
inline constexpr std::size_t kMaxEnumerationLabels = 3;
inline constexpr std::size_t kMaxEnumerationUnary = 3;
inline constexpr std::size_t kMaxEnumeratedTrees = 1'000'000;

/// The universe of trees over the words w1..wN: every leaf under the single
/// preterminal, internal nodes labelled from `labels`, branching nodes with
/// 2..max_children children, and at most `max_unary` stacked unary
/// (non-preterminal) nodes above any node.
struct EnumerationSpec {
  std::size_t words = 3;
  std::vector<std::string> labels{"A", "B"};
  std::string preterminal = "P";
  std::size_t max_children = 3;
  std::size_t max_unary = 1;
};

/// Number of trees enumerate_trees would return, computed without building
/// them (saturates at SIZE_MAX).
std::size_t count_trees(const EnumerationSpec& spec);

/// All distinct trees in a deterministic order. Throws InvalidArgument for a
/// malformed spec and SearchSpaceTooLarge when a bound is exceeded.
std::vector<ConstituentTree> enumerate_trees(const EnumerationSpec& spec);

/// Vocabulary covering an enumeration: the labels then the preterminal.
LabelVocabulary enumeration_vocabulary(const EnumerationSpec& spec);

struct CollisionReport {
  std::size_t tree_count = 0;
  std::size_t distinct_left_sequences = 0;
  std::size_t distinct_pairs = 0;
  std::size_t left_collision_classes = 0;  // left-key classes holding >= 2 trees
  std::size_t pair_collision_classes = 0;  // pair-key classes holding >= 2 trees
  /// Two trees with the same left key, preferring ones the pair key separates.
  std::optional<std::pair<std::size_t, std::size_t>> left_witness;
  /// Two trees that even the pair key cannot tell apart.
  std::optional<std::pair<std::size_t, std::size_t>> pair_witness;
};

/// Groups trees by the left-first linearization (labels and word positions)
/// and by the (left, right) pair. Witness indices refer to `trees`.
CollisionReport collision_report(const std::vector<ConstituentTree>& trees,
                                 const LabelVocabulary& vocab);

}  // namespace synrep
