#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace synrep {

/// Synthetic preterminal inserted above a word that sits next to siblings.
inline constexpr std::string_view kSyntheticPreterminal = "XX";

// A node is either internal (label + children) or a leaf (word, no children).
struct TreeNode {
  std::string label;
  std::string word;
  std::vector<TreeNode> children;

  static TreeNode leaf(std::string word);
  static TreeNode internal(std::string label, std::vector<TreeNode> children);

  bool is_leaf() const noexcept { return children.empty(); }
  bool is_preterminal() const noexcept { return children.size() == 1 && children[0].is_leaf(); }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// A validated constituency tree: every leaf hangs under a unary
/// preterminal and every internal label is drawn from [A-Z0-9$-].
class ConstituentTree {
 public:
  /// Validates; throws Error on any violated invariant.
  explicit ConstituentTree(TreeNode root);

  const TreeNode& root() const noexcept { return root_; }

  std::vector<std::string> words() const;
  std::size_t word_count() const noexcept { return word_count_; }
  std::size_t internal_count() const noexcept { return internal_count_; }

  /// Same tree with the child order reversed at every node.
  ConstituentTree mirrored() const;

  friend bool operator==(const ConstituentTree& a, const ConstituentTree& b) {
    return a.root_ == b.root_;
  }

 private:
  TreeNode root_;
  std::size_t word_count_ = 0;
  std::size_t internal_count_ = 0;
};

bool is_valid_label(std::string_view label) noexcept;

/// Parses one bracketed tree. Leaves that share a parent with other children
/// get an `XX` preterminal inserted above them.
ConstituentTree parse_tree(std::string_view text);

/// Canonical single-line form, e.g. `(S (NP (DT the) (NN cat)) (VP (VB sat)))`.
std::string serialize_tree(const ConstituentTree& tree);

enum class LabelId : std::uint32_t {};

constexpr std::size_t index_of(LabelId id) noexcept { return static_cast<std::size_t>(id); }

/// Insertion-ordered bijection between labels and 0-based ids.
class LabelVocabulary {
 public:
  LabelVocabulary() = default;
  explicit LabelVocabulary(const std::vector<std::string>& labels);

  /// Returns the existing id when the label is already present.
  LabelId add(const std::string& label);

  std::optional<LabelId> find(std::string_view label) const;
  /// Throws UnknownLabel.
  LabelId id(std::string_view label) const;
  const std::string& label(LabelId id) const;

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const LabelVocabulary& a, const LabelVocabulary& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelId> index_;
};

/// All internal labels of the corpus in first-occurrence (pre-order) order.
/// Throws EmptyCorpus.
LabelVocabulary build_vocabulary(const std::vector<ConstituentTree>& trees);

/// Reads the tree-file format: one tree per line; blank lines and lines
/// starting with `#` are skipped. Errors are rethrown with the line number.
std::vector<ConstituentTree> parse_tree_lines(std::string_view text);

}  // namespace synrep
