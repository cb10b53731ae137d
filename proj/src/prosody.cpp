#include "synrep/prosody.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "synrep/error.hpp"

namespace synrep {

LexiconPolicy parse_lexicon_policy(std::string_view name) {
  if (name == "strict") return LexiconPolicy::Strict;
  if (name == "fallback") return LexiconPolicy::Fallback;
  throw Error(ErrorCode::InvalidArgument, "lexicon policy must be strict or fallback");
}

std::vector<std::string> split_graphemes(std::string_view word) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < word.size()) {
    const auto lead = static_cast<unsigned char>(word[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    len = std::min(len, word.size() - i);
    out.emplace_back(word.substr(i, len));
    i += len;
  }
  return out;
}

PhonemeInventory::PhonemeInventory(const std::vector<std::string>& symbols) {
  for (const auto& s : symbols) add(s);
}

std::size_t PhonemeInventory::add(const std::string& symbol) {
  if (auto it = index_.find(symbol); it != index_.end()) return it->second;
  symbols_.push_back(symbol);
  index_.emplace(symbol, symbols_.size() - 1);
  return symbols_.size() - 1;
}

std::optional<std::size_t> PhonemeInventory::find(std::string_view symbol) const {
  if (auto it = index_.find(std::string(symbol)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t PhonemeInventory::id(std::string_view symbol) const {
  if (auto found = find(symbol)) return *found;
  throw Error(ErrorCode::UnknownPhoneme, "phoneme '" + std::string(symbol) + "' not in inventory");
}

void Lexicon::add(const std::string& word, std::vector<std::string> phonemes) {
  if (phonemes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "word '" + word + "' has no phonemes");
  }
  if (!entries_.contains(word)) words_.push_back(word);
  entries_[word] = std::move(phonemes);
}

const std::vector<std::string>* Lexicon::find(std::string_view word) const {
  if (auto it = entries_.find(std::string(word)); it != entries_.end()) return &it->second;
  return nullptr;
}

std::vector<std::string> Lexicon::pronounce(std::string_view word, LexiconPolicy policy) const {
  if (const auto* entry = find(word)) return *entry;
  if (policy == LexiconPolicy::Strict) {
    throw Error(ErrorCode::UnknownWord, "word '" + std::string(word) + "' not in lexicon");
  }
  return split_graphemes(word);
}

PhonemeInventory Lexicon::inventory() const {
  PhonemeInventory inv;
  for (const auto& word : words_) {
    for (const auto& ph : entries_.at(word)) inv.add(ph);
  }
  return inv;
}

Lexicon parse_lexicon(std::string_view text) {
  Lexicon lexicon;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word) || word.front() == '#') continue;
    std::vector<std::string> phonemes;
    for (std::string ph; fields >> ph;) phonemes.push_back(ph);
    if (phonemes.empty()) {
      throw Error(ErrorCode::FormatError,
                  "lexicon line " + std::to_string(line_no) + ": '" + word + "' has no phonemes");
    }
    lexicon.add(word, std::move(phonemes));
  }
  return lexicon;
}

Matrix upsample(const SyntacticFeatureSet& features, std::span<const std::size_t> counts) {
  if (counts.size() != features.word_count()) {
    throw Error(ErrorCode::CountMismatch, std::to_string(counts.size()) + " counts for " +
                                              std::to_string(features.word_count()) + " words");
  }
  std::size_t total = 0;
  for (std::size_t c : counts) {
    if (c == 0) throw Error(ErrorCode::ZeroCount, "every word needs at least one phoneme");
    total += c;
  }
  const std::size_t dim = features.dim();
  Matrix out(total, dim);
  std::size_t row = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Vector& f = features.per_word[i];
    if (f.size() != dim) throw Error(ErrorCode::DimensionMismatch, "ragged feature set");
    for (std::size_t k = 0; k < counts[i]; ++k, ++row) {
      std::copy(f.begin(), f.end(), out.row(row).begin());
    }
  }
  return out;
}

PhonemeLevelFeatures make_phoneme_level(const SyntacticFeatureSet& features,
                                        const std::vector<std::string>& words,
                                        const Lexicon& lexicon, LexiconPolicy policy,
                                        const PhonemeInventory& inventory,
                                        const Matrix& phoneme_table) {
  if (words.size() != features.word_count()) {
    throw Error(ErrorCode::CountMismatch, "word list and feature set differ in length");
  }
  if (phoneme_table.rows() != inventory.size()) {
    throw Error(ErrorCode::DimensionMismatch, "phoneme table rows differ from inventory size");
  }
  PhonemeLevelFeatures out;
  std::vector<std::size_t> ids;
  for (const auto& word : words) {
    auto phonemes = lexicon.pronounce(word, policy);
    out.counts.push_back(phonemes.size());
    for (auto& ph : phonemes) {
      ids.push_back(inventory.id(ph));
      out.phonemes.push_back(std::move(ph));
    }
  }
  const Matrix syntactic = upsample(features, out.counts);
  const std::size_t d_syn = syntactic.cols();
  const std::size_t d_ph = phoneme_table.cols();
  out.rows = Matrix(ids.size(), d_syn + d_ph);
  for (std::size_t p = 0; p < ids.size(); ++p) {
    auto dst = out.rows.row(p);
    const auto syn = syntactic.row(p);
    const auto ph = phoneme_table.row(ids[p]);
    std::copy(syn.begin(), syn.end(), dst.begin());
    std::copy(ph.begin(), ph.end(), dst.begin() + static_cast<std::ptrdiff_t>(d_syn));
  }
  return out;
}

namespace {

std::size_t count_words(const TreeNode& node) {
  if (node.is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& child : node.children) n += count_words(child);
  return n;
}

}  // namespace

ProxyTask oracle_breaks(const ConstituentTree& tree) {
  const std::size_t w = tree.word_count();
  ProxyTask task{std::vector<int>(w, 0)};
  const TreeNode& root = tree.root();
  if (!root.is_preterminal()) {
    std::size_t end = 0;
    for (const auto& child : root.children) {
      end += count_words(child);
      task.breaks[end - 1] = 1;
    }
  }
  task.breaks[w - 1] = 1;
  return task;
}

}  // namespace synrep
