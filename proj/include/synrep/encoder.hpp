#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "synrep/gru.hpp"
#include "synrep/linearizer.hpp"
#include "synrep/matrix.hpp"
#include "synrep/rng.hpp"
#include "synrep/tree.hpp"

namespace synrep {

/// Label embedding table shared by both traversals; row i embeds LabelId i.
struct EmbeddingTable {
  Matrix weights;  // N x d_emb

  std::size_t size() const noexcept { return weights.rows(); }
  std::size_t dim() const noexcept { return weights.cols(); }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;
};

/// Rows of the table selected by `ids`, in order. Throws IdOutOfRange.
Matrix embed_sequence(const EmbeddingTable& table, std::span<const LabelId> ids);

/// Per-word syntactic features: word i is the left-GRU state at its
/// left-first position followed by the right-GRU state at its right-first
/// position.
struct SyntacticFeatureSet {
  std::vector<Vector> per_word;

  std::size_t word_count() const noexcept { return per_word.size(); }
  std::size_t dim() const noexcept { return per_word.empty() ? 0 : per_word.front().size(); }

  friend bool operator==(const SyntacticFeatureSet&, const SyntacticFeatureSet&) = default;
};

/// Throws DimensionMismatch.
SyntacticFeatureSet extract_features(const Matrix& left_states, const Matrix& right_states,
                                     const LinearizationPair& pair);

/// The shared embedding plus the two direction-specific GRUs.
struct EncoderParameters {
  EmbeddingTable embedding;
  GruParameters left;
  GruParameters right;

  static EncoderParameters zeros(std::size_t labels, std::size_t d_emb, std::size_t d_hid);
  /// Embedding, then left GRU, then right GRU drawn from `rng`.
  static EncoderParameters uniform(std::size_t labels, std::size_t d_emb, std::size_t d_hid,
                                   double scale, Rng& rng);

  std::size_t d_emb() const noexcept { return embedding.dim(); }
  std::size_t d_hid() const noexcept { return left.hidden_dim(); }
  std::size_t feature_dim() const noexcept { return 2 * d_hid(); }

  void add_scaled(const EncoderParameters& other, double scale);

  friend bool operator==(const EncoderParameters&, const EncoderParameters&) = default;
};

/// Forward intermediates kept for encoder_backward.
struct EncoderTrace {
  LinearizationPair pair;
  GruCache left;
  GruCache right;
};

struct EncodedSentence {
  SyntacticFeatureSet features;
  EncoderTrace trace;
};

/// linearize_pair -> embed -> GRU_l / GRU_r from zero states -> extract_features.
EncodedSentence encode(const EncoderParameters& params, const LinearizationPair& pair);
EncodedSentence encode(const EncoderParameters& params, const ConstituentTree& tree,
                       const LabelVocabulary& vocab);

SyntacticFeatureSet encode_sentence(const EncoderParameters& params, const ConstituentTree& tree,
                                    const LabelVocabulary& vocab);

/// Gradient of a scalar loss w.r.t. every encoder parameter, given dL/df_i
/// for each word. The result has the shape of EncoderParameters.
EncoderParameters encoder_backward(const EncoderParameters& params, const EncoderTrace& trace,
                                   const std::vector<Vector>& grad_features);

}  // namespace synrep
