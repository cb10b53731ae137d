#include "synrep/synthetic.hpp"

#include <array>
#include <string>

#include "synrep/error.hpp"
#include "synrep/rng.hpp"

namespace synrep {

namespace {

constexpr int kMaxDepth = 3;

class Grammar {
 public:
  explicit Grammar(Rng& rng) : rng_(rng) {}

  TreeNode sentence() {
    static constexpr std::array<std::array<const char*, 4>, 6> kTemplates{{
        {"NP", "VP", nullptr, nullptr},
        {"NP", "VP", "PP", nullptr},
        {"ADVP", "NP", "VP", nullptr},
        {"PP", "NP", "VP", nullptr},
        {"NP", "VP", "ADVP", nullptr},
        {"VP", "NP", nullptr, nullptr},
    }};
    const auto& pick = kTemplates[rng_.below(kTemplates.size())];
    std::vector<TreeNode> children;
    for (const char* phrase : pick) {
      if (phrase) children.push_back(expand(phrase, 1));
    }
    return TreeNode::internal("S", std::move(children));
  }

 private:
  TreeNode word(const char* tag) {
    static constexpr std::array<const char*, 4> kDT{"the", "a", "this", "every"};
    static constexpr std::array<const char*, 4> kNN{"cat", "dog", "house", "river"};
    static constexpr std::array<const char*, 4> kVB{"sat", "saw", "ran", "found"};
    static constexpr std::array<const char*, 4> kIN{"in", "on", "with", "under"};
    static constexpr std::array<const char*, 4> kJJ{"big", "red", "old", "quiet"};
    static constexpr std::array<const char*, 4> kRB{"very", "often", "quickly", "then"};
    const std::string t(tag);
    const auto& pool = t == "DT"   ? kDT
                       : t == "NN" ? kNN
                       : t == "VB" ? kVB
                       : t == "IN" ? kIN
                       : t == "JJ" ? kJJ
                                   : kRB;
    return TreeNode::internal(t, {TreeNode::leaf(pool[rng_.below(pool.size())])});
  }

  bool chance(double p) { return rng_.uniform01() < p; }

  TreeNode expand(const std::string& phrase, int depth) {
    const bool may_nest = depth < kMaxDepth;
    std::vector<TreeNode> kids;
    if (phrase == "NP") {
      if (chance(0.7)) kids.push_back(word("DT"));
      if (chance(0.3)) kids.push_back(expand("ADJP", depth + 1));
      kids.push_back(word("NN"));
      if (may_nest && chance(0.2)) kids.push_back(expand("PP", depth + 1));
    } else if (phrase == "VP") {
      kids.push_back(word("VB"));
      if (may_nest && chance(0.5)) kids.push_back(expand("NP", depth + 1));
      if (may_nest && chance(0.25)) kids.push_back(expand("PP", depth + 1));
      if (chance(0.15)) kids.push_back(expand("ADVP", depth + 1));
    } else if (phrase == "PP") {
      kids.push_back(word("IN"));
      kids.push_back(expand("NP", depth + 1));
    } else if (phrase == "ADJP") {
      if (chance(0.3)) kids.push_back(word("RB"));
      kids.push_back(word("JJ"));
    } else if (phrase == "ADVP") {
      kids.push_back(word("RB"));
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown phrase " + phrase);
    }
    return TreeNode::internal(phrase, std::move(kids));
  }

  Rng& rng_;
};

}  // namespace

std::vector<ConstituentTree> generate_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.min_words < 2 || spec.min_words > spec.max_words) {
    throw Error(ErrorCode::InvalidArgument, "need 2 <= min_words <= max_words");
  }
  Rng rng(spec.seed);
  Grammar grammar(rng);
  std::vector<ConstituentTree> corpus;
  corpus.reserve(spec.sentences);
  while (corpus.size() < spec.sentences) {
    ConstituentTree tree(grammar.sentence());
    if (tree.word_count() >= spec.min_words && tree.word_count() <= spec.max_words) {
      corpus.push_back(std::move(tree));
    }
  }
  return corpus;
}

}  // namespace synrep
