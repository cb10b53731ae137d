#include "synrep/tree.hpp"

#include <algorithm>
#include <cctype>

#include "synrep/error.hpp"

namespace synrep {

TreeNode TreeNode::leaf(std::string word) { return TreeNode{{}, std::move(word), {}}; }

TreeNode TreeNode::internal(std::string label, std::vector<TreeNode> children) {
  return TreeNode{std::move(label), {}, std::move(children)};
}

bool is_valid_label(std::string_view label) noexcept {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '-' || ch == '$';
  });
}

namespace {

bool is_valid_word(std::string_view word) noexcept {
  if (word.empty()) return false;
  return std::none_of(word.begin(), word.end(), [](char ch) {
    return ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch));
  });
}

struct Counts {
  std::size_t words = 0;
  std::size_t internals = 0;
};

void validate(const TreeNode& node, Counts& counts) {
  if (node.is_leaf()) {
    // A bare leaf is only reachable as the root; preterminal children are
    // handled below without recursing.
    throw Error(ErrorCode::UnexpectedToken, "word '" + node.word + "' is not under a preterminal");
  }
  if (!node.word.empty()) {
    throw Error(ErrorCode::UnexpectedToken, "internal node '" + node.label + "' carries a word");
  }
  if (!is_valid_label(node.label)) {
    if (node.label.empty()) throw Error(ErrorCode::MissingLabel, "internal node without label");
    throw Error(ErrorCode::InvalidLabel, "label '" + node.label + "' outside [A-Z0-9$-]");
  }
  ++counts.internals;
  if (node.is_preterminal()) {
    const TreeNode& leaf = node.children[0];
    if (!is_valid_word(leaf.word) || !leaf.label.empty()) {
      throw Error(ErrorCode::UnexpectedToken, "malformed word under '" + node.label + "'");
    }
    ++counts.words;
    return;
  }
  for (const TreeNode& child : node.children) {
    if (child.is_leaf()) {
      throw Error(ErrorCode::UnexpectedToken,
                  "word '" + child.word + "' under non-unary node '" + node.label + "'");
    }
    validate(child, counts);
  }
}

void mirror_in_place(TreeNode& node) {
  std::reverse(node.children.begin(), node.children.end());
  for (TreeNode& child : node.children) mirror_in_place(child);
}

void collect_words(const TreeNode& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.word);
    return;
  }
  for (const TreeNode& child : node.children) collect_words(child, out);
}

enum class TokenKind { Open, Close, Atom };

struct Token {
  TokenKind kind;
  std::string_view text;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '(') {
      tokens.push_back({TokenKind::Open, text.substr(i, 1)});
      ++i;
    } else if (ch == ')') {
      tokens.push_back({TokenKind::Close, text.substr(i, 1)});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && text[i] != '(' && text[i] != ')' &&
             !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      tokens.push_back({TokenKind::Atom, text.substr(start, i - start)});
    }
  }
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  TreeNode parse_root() {
    if (tokens_.empty()) throw Error(ErrorCode::EmptyInput, "no tree in input");
    check_balance();
    if (tokens_[0].kind != TokenKind::Open) {
      throw Error(ErrorCode::UnexpectedToken,
                  "expected '(' but found '" + std::string(tokens_[0].text) + "'");
    }
    TreeNode root = parse_node();
    if (pos_ != tokens_.size()) {
      throw Error(ErrorCode::UnexpectedToken, "trailing input after the tree");
    }
    return root;
  }

 private:
  void check_balance() const {
    long depth = 0;
    for (const Token& t : tokens_) {
      if (t.kind == TokenKind::Open) ++depth;
      if (t.kind == TokenKind::Close && --depth < 0) {
        throw Error(ErrorCode::UnbalancedBrackets, "')' without matching '('");
      }
    }
    if (depth != 0) throw Error(ErrorCode::UnbalancedBrackets, "unclosed '('");
  }

  TreeNode parse_node() {
    ++pos_;  // '('
    if (pos_ >= tokens_.size()) throw Error(ErrorCode::UnbalancedBrackets, "unclosed '('");
    const Token& head = tokens_[pos_];
    if (head.kind == TokenKind::Close) throw Error(ErrorCode::EmptyNode, "empty node '()'");
    if (head.kind == TokenKind::Open) throw Error(ErrorCode::MissingLabel, "node without label");
    std::string label(head.text);
    if (!is_valid_label(label)) {
      throw Error(ErrorCode::InvalidLabel, "label '" + label + "' outside [A-Z0-9$-]");
    }
    ++pos_;

    std::vector<TreeNode> children;
    while (true) {
      if (pos_ >= tokens_.size()) throw Error(ErrorCode::UnbalancedBrackets, "unclosed '('");
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::Close) {
        ++pos_;
        break;
      }
      if (t.kind == TokenKind::Open) {
        children.push_back(parse_node());
      } else {
        children.push_back(TreeNode::leaf(std::string(t.text)));
        ++pos_;
      }
    }
    if (children.empty()) {
      throw Error(ErrorCode::EmptyNode, "node '" + label + "' has no children");
    }
    if (children.size() > 1) {
      for (TreeNode& child : children) {
        if (child.is_leaf()) {
          child = TreeNode::internal(std::string(kSyntheticPreterminal), {std::move(child)});
        }
      }
    }
    return TreeNode::internal(std::move(label), std::move(children));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void serialize_node(const TreeNode& node, std::string& out) {
  if (node.is_leaf()) {
    out += node.word;
    return;
  }
  out += '(';
  out += node.label;
  for (const TreeNode& child : node.children) {
    out += ' ';
    serialize_node(child, out);
  }
  out += ')';
}

void collect_labels(const TreeNode& node, LabelVocabulary& vocab) {
  if (node.is_leaf()) return;
  vocab.add(node.label);
  for (const TreeNode& child : node.children) collect_labels(child, vocab);
}

}  // namespace

ConstituentTree::ConstituentTree(TreeNode root) : root_(std::move(root)) {
  Counts counts;
  validate(root_, counts);
  word_count_ = counts.words;
  internal_count_ = counts.internals;
}

std::vector<std::string> ConstituentTree::words() const {
  std::vector<std::string> out;
  out.reserve(word_count_);
  collect_words(root_, out);
  return out;
}

ConstituentTree ConstituentTree::mirrored() const {
  TreeNode copy = root_;
  mirror_in_place(copy);
  return ConstituentTree(std::move(copy));
}

ConstituentTree parse_tree(std::string_view text) {
  Parser parser(tokenize(text));
  return ConstituentTree(parser.parse_root());
}

std::string serialize_tree(const ConstituentTree& tree) {
  std::string out;
  serialize_node(tree.root(), out);
  return out;
}

LabelVocabulary::LabelVocabulary(const std::vector<std::string>& labels) {
  for (const std::string& label : labels) add(label);
}

LabelId LabelVocabulary::add(const std::string& label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  const auto id = static_cast<LabelId>(labels_.size());
  labels_.push_back(label);
  index_.emplace(label, id);
  return id;
}

std::optional<LabelId> LabelVocabulary::find(std::string_view label) const {
  if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
  return std::nullopt;
}

LabelId LabelVocabulary::id(std::string_view label) const {
  if (auto found = find(label)) return *found;
  throw Error(ErrorCode::UnknownLabel, "label '" + std::string(label) + "' not in vocabulary");
}

const std::string& LabelVocabulary::label(LabelId id) const {
  if (index_of(id) >= labels_.size()) {
    throw Error(ErrorCode::IdOutOfRange, "label id " + std::to_string(index_of(id)));
  }
  return labels_[index_of(id)];
}

LabelVocabulary build_vocabulary(const std::vector<ConstituentTree>& trees) {
  if (trees.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot build a vocabulary from no trees");
  LabelVocabulary vocab;
  for (const ConstituentTree& tree : trees) collect_labels(tree.root(), vocab);
  return vocab;
}

std::vector<ConstituentTree> parse_tree_lines(std::string_view text) {
  std::vector<ConstituentTree> trees;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        trees.push_back(parse_tree(line));
      } catch (const Error& e) {
        throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
      }
    }
    if (end == text.size()) break;
  }
  return trees;
}

}  // namespace synrep
