#include "synrep/encoder.hpp"

#include <algorithm>
#include <string>

#include "synrep/error.hpp"

namespace synrep {

Matrix embed_sequence(const EmbeddingTable& table, std::span<const LabelId> ids) {
  Matrix out(ids.size(), table.dim());
  for (std::size_t t = 0; t < ids.size(); ++t) {
    const std::size_t id = index_of(ids[t]);
    if (id >= table.size()) {
      throw Error(ErrorCode::IdOutOfRange, "label id " + std::to_string(id) + " >= table size " +
                                               std::to_string(table.size()));
    }
    const auto src = table.weights.row(id);
    std::copy(src.begin(), src.end(), out.row(t).begin());
  }
  return out;
}

SyntacticFeatureSet extract_features(const Matrix& left_states, const Matrix& right_states,
                                     const LinearizationPair& pair) {
  if (left_states.rows() != pair.left.length() || right_states.rows() != pair.right.length()) {
    throw Error(ErrorCode::DimensionMismatch, "GRU outputs do not match the linearization lengths");
  }
  if (pair.left.word_positions.size() != pair.right.word_positions.size()) {
    throw Error(ErrorCode::DimensionMismatch, "left and right word counts differ");
  }
  const std::size_t w = pair.left.word_positions.size();
  SyntacticFeatureSet out;
  out.per_word.reserve(w);
  for (std::size_t i = 0; i < w; ++i) {
    const std::size_t pl = pair.left.word_positions[i];
    const std::size_t pr = pair.right.word_positions[i];
    if (pl >= left_states.rows() || pr >= right_states.rows()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "word position out of range for word " + std::to_string(i));
    }
    const auto l = left_states.row(pl);
    const auto r = right_states.row(pr);
    Vector f;
    f.reserve(l.size() + r.size());
    f.insert(f.end(), l.begin(), l.end());
    f.insert(f.end(), r.begin(), r.end());
    out.per_word.push_back(std::move(f));
  }
  return out;
}

EncoderParameters EncoderParameters::zeros(std::size_t labels, std::size_t d_emb,
                                           std::size_t d_hid) {
  return {EmbeddingTable{Matrix(labels, d_emb)}, GruParameters::zeros(d_emb, d_hid),
          GruParameters::zeros(d_emb, d_hid)};
}

EncoderParameters EncoderParameters::uniform(std::size_t labels, std::size_t d_emb,
                                             std::size_t d_hid, double scale, Rng& rng) {
  EncoderParameters p = zeros(labels, d_emb, d_hid);
  for (double& x : p.embedding.weights.data()) x = rng.uniform(-scale, scale);
  p.left = GruParameters::uniform(d_emb, d_hid, scale, rng);
  p.right = GruParameters::uniform(d_emb, d_hid, scale, rng);
  return p;
}

void EncoderParameters::add_scaled(const EncoderParameters& other, double scale) {
  embedding.weights += other.embedding.weights * scale;
  left.add_scaled(other.left, scale);
  right.add_scaled(other.right, scale);
}

EncodedSentence encode(const EncoderParameters& params, const LinearizationPair& pair) {
  if (params.left.input_dim() != params.d_emb() || params.right.input_dim() != params.d_emb() ||
      params.right.hidden_dim() != params.d_hid()) {
    throw Error(ErrorCode::DimensionMismatch, "encoder blocks disagree on dimensions");
  }
  const Vector h0(params.d_hid(), 0.0);
  GruForward left = gru_forward(params.left, embed_sequence(params.embedding, pair.left.label_ids), h0);
  GruForward right =
      gru_forward(params.right, embed_sequence(params.embedding, pair.right.label_ids), h0);
  SyntacticFeatureSet features = extract_features(left.states, right.states, pair);
  return {std::move(features), EncoderTrace{pair, std::move(left.cache), std::move(right.cache)}};
}

EncodedSentence encode(const EncoderParameters& params, const ConstituentTree& tree,
                       const LabelVocabulary& vocab) {
  return encode(params, linearize_pair(tree, vocab));
}

SyntacticFeatureSet encode_sentence(const EncoderParameters& params, const ConstituentTree& tree,
                                    const LabelVocabulary& vocab) {
  return encode(params, tree, vocab).features;
}

EncoderParameters encoder_backward(const EncoderParameters& params, const EncoderTrace& trace,
                                   const std::vector<Vector>& grad_features) {
  const std::size_t hid = params.d_hid();
  if (grad_features.size() != trace.pair.word_count()) {
    throw Error(ErrorCode::DimensionMismatch, "one feature gradient per word is required");
  }
  Matrix grad_left(trace.pair.left.length(), hid);
  Matrix grad_right(trace.pair.right.length(), hid);
  for (std::size_t i = 0; i < grad_features.size(); ++i) {
    const Vector& g = grad_features[i];
    if (g.size() != 2 * hid) {
      throw Error(ErrorCode::DimensionMismatch, "feature gradient has wrong width");
    }
    auto l = grad_left.row(trace.pair.left.word_positions[i]);
    auto r = grad_right.row(trace.pair.right.word_positions[i]);
    for (std::size_t j = 0; j < hid; ++j) {
      l[j] += g[j];
      r[j] += g[hid + j];
    }
  }

  GruGradients gl = gru_backward(params.left, trace.left, grad_left);
  GruGradients gr = gru_backward(params.right, trace.right, grad_right);

  EncoderParameters grads{EmbeddingTable{Matrix(params.embedding.size(), params.d_emb())},
                          std::move(gl.params), std::move(gr.params)};
  auto scatter = [&](const Linearization& lin, const Matrix& grad_inputs) {
    for (std::size_t t = 0; t < lin.length(); ++t) {
      auto dst = grads.embedding.weights.row(index_of(lin.label_ids[t]));
      const auto src = grad_inputs.row(t);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  };
  scatter(trace.pair.left, gl.inputs);
  scatter(trace.pair.right, gr.inputs);
  return grads;
}

}  // namespace synrep
