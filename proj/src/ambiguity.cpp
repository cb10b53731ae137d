#include "synrep/ambiguity.hpp"

#include <limits>
#include <map>
#include <set>

#include "synrep/error.hpp"
#include "synrep/linearizer.hpp"

namespace synrep {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) { return a > kSaturated - b ? kSaturated : a + b; }

void check_spec(const EnumerationSpec& spec) {
  if (spec.words == 0 || spec.labels.empty() || spec.max_children < 2) {
    throw Error(ErrorCode::InvalidArgument, "need >= 1 word, >= 1 label and max_children >= 2");
  }
  std::set<std::string> seen;
  for (const auto& label : spec.labels) {
    if (!is_valid_label(label) || label == spec.preterminal || !seen.insert(label).second) {
      throw Error(ErrorCode::InvalidArgument, "labels must be valid, distinct and not the preterminal");
    }
  }
  if (!is_valid_label(spec.preterminal)) {
    throw Error(ErrorCode::InvalidArgument, "invalid preterminal label");
  }
  if (spec.words > kMaxEnumerationWords || spec.max_children > kMaxEnumerationChildren ||
      spec.labels.size() > kMaxEnumerationLabels || spec.max_unary > kMaxEnumerationUnary) {
    throw Error(ErrorCode::SearchSpaceTooLarge, "enumeration bounds exceeded");
  }
}

// Calls visit(pieces) for every split of `length` into 2..max_parts ordered
// positive parts.
template <typename Visit>
void for_each_composition(std::size_t length, std::size_t max_parts, Visit&& visit) {
  std::vector<std::size_t> parts;
  auto recurse = [&](auto& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      if (parts.size() >= 2) visit(parts);
      return;
    }
    if (parts.size() == max_parts) return;
    for (std::size_t take = 1; take <= remaining; ++take) {
      parts.push_back(take);
      self(self, remaining - take);
      parts.pop_back();
    }
  };
  recurse(recurse, length);
}

class Counter {
 public:
  explicit Counter(const EnumerationSpec& spec) : spec_(spec) {}

  std::size_t count(std::size_t length, std::size_t unary) {
    const auto key = std::make_pair(length, unary);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t total = 0;
    if (length == 1) {
      total = 1;
    } else {
      for_each_composition(length, spec_.max_children, [&](const std::vector<std::size_t>& parts) {
        std::size_t product = spec_.labels.size();
        for (std::size_t p : parts) product = sat_mul(product, count(p, spec_.max_unary));
        total = sat_add(total, product);
      });
    }
    if (unary > 0) total = sat_add(total, sat_mul(spec_.labels.size(), count(length, unary - 1)));
    memo_[key] = total;
    return total;
  }

 private:
  const EnumerationSpec& spec_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo_;
};

class Enumerator {
 public:
  explicit Enumerator(const EnumerationSpec& spec) : spec_(spec) {}

  const std::vector<TreeNode>& trees(std::size_t begin, std::size_t end, std::size_t unary) {
    const auto key = std::make_tuple(begin, end, unary);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TreeNode> out;
    if (end - begin == 1) {
      out.push_back(TreeNode::internal(
          spec_.preterminal, {TreeNode::leaf("w" + std::to_string(begin + 1))}));
    } else {
      for_each_composition(end - begin, spec_.max_children, [&](const std::vector<std::size_t>& parts) {
        std::vector<const std::vector<TreeNode>*> options;
        std::size_t at = begin;
        for (std::size_t p : parts) {
          options.push_back(&trees(at, at + p, spec_.max_unary));
          at += p;
        }
        std::vector<std::size_t> choice(parts.size(), 0);
        while (true) {
          std::vector<TreeNode> children;
          for (std::size_t k = 0; k < parts.size(); ++k) children.push_back((*options[k])[choice[k]]);
          for (const auto& label : spec_.labels) out.push_back(TreeNode::internal(label, children));
          std::size_t k = parts.size();
          while (k > 0 && ++choice[k - 1] == options[k - 1]->size()) choice[--k] = 0;
          if (k == 0) break;
        }
      });
    }
    if (unary > 0) {
      const std::vector<TreeNode> shorter = trees(begin, end, unary - 1);
      for (const auto& label : spec_.labels) {
        for (const TreeNode& t : shorter) out.push_back(TreeNode::internal(label, {t}));
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const EnumerationSpec& spec_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<TreeNode>> memo_;
};

struct LinearKey {
  std::vector<LabelId> labels;
  std::vector<std::size_t> positions;

  friend auto operator<=>(const LinearKey&, const LinearKey&) = default;
};

LinearKey key_of(const Linearization& lin) { return {lin.label_ids, lin.word_positions}; }

}  // namespace

std::size_t count_trees(const EnumerationSpec& spec) {
  check_spec(spec);
  return Counter(spec).count(spec.words, spec.max_unary);
}

std::vector<ConstituentTree> enumerate_trees(const EnumerationSpec& spec) {
  const std::size_t expected = count_trees(spec);
  if (expected > kMaxEnumeratedTrees) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "enumeration would produce more than " + std::to_string(kMaxEnumeratedTrees) + " trees");
  }
  Enumerator enumerator(spec);
  const auto& nodes = enumerator.trees(0, spec.words, spec.max_unary);

  std::vector<ConstituentTree> out;
  out.reserve(nodes.size());
  std::set<std::string> seen;
  for (const TreeNode& node : nodes) {
    ConstituentTree tree(node);
    if (seen.insert(serialize_tree(tree)).second) out.push_back(std::move(tree));
  }
  return out;
}

LabelVocabulary enumeration_vocabulary(const EnumerationSpec& spec) {
  LabelVocabulary vocab(spec.labels);
  vocab.add(spec.preterminal);
  return vocab;
}

CollisionReport collision_report(const std::vector<ConstituentTree>& trees,
                                 const LabelVocabulary& vocab) {
  CollisionReport report;
  report.tree_count = trees.size();
  std::map<LinearKey, std::vector<std::size_t>> left_classes;
  std::map<std::pair<LinearKey, LinearKey>, std::vector<std::size_t>> pair_classes;
  std::vector<std::pair<LinearKey, LinearKey>> keys;
  keys.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const LinearizationPair pair = linearize_pair(trees[i], vocab);
    keys.emplace_back(key_of(pair.left), key_of(pair.right));
    left_classes[keys.back().first].push_back(i);
    pair_classes[keys.back()].push_back(i);
  }
  report.distinct_left_sequences = left_classes.size();
  report.distinct_pairs = pair_classes.size();

  for (const auto& [key, members] : left_classes) {
    if (members.size() < 2) continue;
    ++report.left_collision_classes;
    if (report.left_witness && keys[report.left_witness->first].second !=
                                   keys[report.left_witness->second].second) {
      continue;
    }
    for (std::size_t k = 1; k < members.size(); ++k) {
      if (keys[members[0]].second != keys[members[k]].second) {
        report.left_witness = std::make_pair(members[0], members[k]);
        break;
      }
    }
    if (!report.left_witness) report.left_witness = std::make_pair(members[0], members[1]);
  }
  for (const auto& [key, members] : pair_classes) {
    if (members.size() < 2) continue;
    ++report.pair_collision_classes;
    if (!report.pair_witness) report.pair_witness = std::make_pair(members[0], members[1]);
  }
  return report;
}

}  // namespace synrep
