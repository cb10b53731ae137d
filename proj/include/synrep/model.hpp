#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "synrep/encoder.hpp"
#include "synrep/matrix.hpp"
#include "synrep/prosody.hpp"
#include "synrep/tree.hpp"

namespace synrep {

struct ModelDims {
  std::size_t d_emb = 32;
  std::size_t d_hid = 64;
  std::size_t d_ph = 16;

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

inline constexpr double kInitScale = 0.08;
inline constexpr int kCheckpointFormatVersion = 1;

/// Everything that is trained: label encoder, phoneme embeddings and the
/// logistic break head on the per-word syntactic feature.
struct ProsodyModel {
  ModelDims dims;
  LabelVocabulary labels;
  PhonemeInventory phonemes;
  EncoderParameters encoder;
  Matrix phoneme_embedding;  // |phonemes| x d_ph
  Vector head_weights;       // 2 d_hid
  double head_bias = 0.0;

  /// Draws, in order: label embedding, left GRU, right GRU, phoneme
  /// embedding, head weights; all uniform(-0.08, 0.08), biases zero.
  static ProsodyModel initialize(LabelVocabulary labels, PhonemeInventory phonemes,
                                 const ModelDims& dims, std::uint64_t seed);

  /// Throws DimensionMismatch if any block disagrees with `dims`.
  void validate() const;

  friend bool operator==(const ProsodyModel&, const ProsodyModel&) = default;
};

/// Versioned JSON checkpoint (`format_version: 1`).
std::string save_checkpoint(const ProsodyModel& model);
/// Throws FormatError.
ProsodyModel load_checkpoint(std::string_view json_text);

}  // namespace synrep
