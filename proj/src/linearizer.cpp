#include "synrep/linearizer.hpp"

#include <algorithm>

#include "synrep/error.hpp"

namespace synrep {

namespace {

enum class Direction { LeftFirst, RightFirst };

// Iterative so that pathological unary chains cannot exhaust the stack.
Linearization traverse(const ConstituentTree& tree, const LabelVocabulary& vocab,
                       Direction direction) {
  Linearization out;
  out.label_ids.reserve(tree.internal_count());
  // Words are met in reverse sentence order by the right-first walk.
  std::vector<std::size_t> positions_in_visit_order;
  positions_in_visit_order.reserve(tree.word_count());

  std::vector<const TreeNode*> stack{&tree.root()};
  while (!stack.empty()) {
    const TreeNode* node = stack.back();
    stack.pop_back();
    out.label_ids.push_back(vocab.id(node->label));
    if (node->is_preterminal()) {
      positions_in_visit_order.push_back(out.label_ids.size() - 1);
      continue;
    }
    if (direction == Direction::LeftFirst) {
      for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) stack.push_back(&*it);
    } else {
      for (const TreeNode& child : node->children) stack.push_back(&child);
    }
  }

  if (direction == Direction::RightFirst) {
    std::reverse(positions_in_visit_order.begin(), positions_in_visit_order.end());
  }
  out.word_positions = std::move(positions_in_visit_order);
  return out;
}

}  // namespace

Linearization linearize_left(const ConstituentTree& tree, const LabelVocabulary& vocab) {
  return traverse(tree, vocab, Direction::LeftFirst);
}

Linearization linearize_right(const ConstituentTree& tree, const LabelVocabulary& vocab) {
  return traverse(tree, vocab, Direction::RightFirst);
}

LinearizationPair linearize_pair(const ConstituentTree& tree, const LabelVocabulary& vocab) {
  LinearizationPair pair{linearize_left(tree, vocab), linearize_right(tree, vocab)};
  if (pair.left.length() != pair.right.length() ||
      pair.left.word_positions.size() != pair.right.word_positions.size()) {
    throw Error(ErrorCode::DimensionMismatch, "left and right linearizations disagree in size");
  }
  auto left_sorted = pair.left.label_ids;
  auto right_sorted = pair.right.label_ids;
  std::sort(left_sorted.begin(), left_sorted.end());
  std::sort(right_sorted.begin(), right_sorted.end());
  if (left_sorted != right_sorted) {
    throw Error(ErrorCode::DimensionMismatch, "left and right label multisets differ");
  }
  return pair;
}

}  // namespace synrep
