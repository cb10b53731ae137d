#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "synrep/tree.hpp"

namespace synrep {

struct SyntheticCorpusSpec {
  std::size_t sentences = 200;
  std::size_t min_words = 2;
  std::size_t max_words = 8;
  std::uint64_t seed = 42;
};

/// Random English-like trees from a small phrase grammar over 12 labels:
/// S, NP, VP, PP, ADJP, ADVP and the preterminals DT, NN, VB, IN, JJ, RB.
/// Sentences outside [min_words, max_words] are redrawn.
std::vector<ConstituentTree> generate_corpus(const SyntheticCorpusSpec& spec);

}  // namespace synrep
