#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synrep/encoder.hpp"
#include "synrep/matrix.hpp"
#include "synrep/tree.hpp"

namespace synrep {

enum class LexiconPolicy {
  Strict,    // unknown words are an error
  Fallback,  // unknown words are spelled one grapheme per phoneme
};

LexiconPolicy parse_lexicon_policy(std::string_view name);

/// Splits a UTF-8 word into code points.
std::vector<std::string> split_graphemes(std::string_view word);

/// Insertion-ordered phoneme symbol table.
class PhonemeInventory {
 public:
  PhonemeInventory() = default;
  explicit PhonemeInventory(const std::vector<std::string>& symbols);

  std::size_t add(const std::string& symbol);
  std::optional<std::size_t> find(std::string_view symbol) const;
  /// Throws UnknownPhoneme.
  std::size_t id(std::string_view symbol) const;

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  friend bool operator==(const PhonemeInventory& a, const PhonemeInventory& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

class Lexicon {
 public:
  /// Throws InvalidArgument for an empty pronunciation.
  void add(const std::string& word, std::vector<std::string> phonemes);

  const std::vector<std::string>* find(std::string_view word) const;
  /// Strict: throws UnknownWord. Fallback: graphemes of the word.
  std::vector<std::string> pronounce(std::string_view word, LexiconPolicy policy) const;

  /// Every phoneme used by an entry, in first-use order.
  PhonemeInventory inventory() const;

  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

/// Lines of `word PH1 PH2 ...`; blank lines and `#` comments skipped.
/// Throws FormatError with the line number.
Lexicon parse_lexicon(std::string_view text);

/// Repeats feature i counts[i] times, in word order. Throws CountMismatch or
/// ZeroCount.
Matrix upsample(const SyntacticFeatureSet& features, std::span<const std::size_t> counts);

/// Phoneme-level encoder input: the upsampled syntactic feature followed by
/// the phoneme's embedding on every row.
struct PhonemeLevelFeatures {
  Matrix rows;                        // P x (2 d_hid + d_ph)
  std::vector<std::string> phonemes;  // P
  std::vector<std::size_t> counts;    // phonemes per word
};

PhonemeLevelFeatures make_phoneme_level(const SyntacticFeatureSet& features,
                                        const std::vector<std::string>& words,
                                        const Lexicon& lexicon, LexiconPolicy policy,
                                        const PhonemeInventory& inventory,
                                        const Matrix& phoneme_table);

/// Synthetic break supervision: 1 after the last word of each child of the
/// root, and always after the final word.
struct ProxyTask {
  std::vector<int> breaks;
};

ProxyTask oracle_breaks(const ConstituentTree& tree);

}  // namespace synrep
