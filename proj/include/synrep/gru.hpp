#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "synrep/matrix.hpp"
#include "synrep/rng.hpp"

namespace synrep {

/// Single-layer GRU, update gate on the candidate:
///   z_t = sigmoid(W_z x_t + U_z h_{t-1} + b_z)
///   r_t = sigmoid(W_r x_t + U_r h_{t-1} + b_r)
///   c_t = tanh(W_h x_t + U_h (r_t * h_{t-1}) + b_h)
///   h_t = (1 - z_t) * h_{t-1} + z_t * c_t
struct GruParameters {
  Matrix w_z, w_r, w_h;  // hidden x input
  Matrix u_z, u_r, u_h;  // hidden x hidden
  Vector b_z, b_r, b_h;  // hidden

  static GruParameters zeros(std::size_t input_dim, std::size_t hidden_dim);
  /// Weights uniform in (-scale, scale), biases zero. Draw order: W_z, W_r,
  /// W_h, U_z, U_r, U_h, each row-major.
  static GruParameters uniform(std::size_t input_dim, std::size_t hidden_dim, double scale, Rng& rng);

  std::size_t input_dim() const noexcept { return w_z.cols(); }
  std::size_t hidden_dim() const noexcept { return w_z.rows(); }

  /// Throws DimensionMismatch unless every block agrees with w_z.
  void validate() const;

  /// *this += scale * other
  void add_scaled(const GruParameters& other, double scale);

  friend bool operator==(const GruParameters&, const GruParameters&) = default;
};

/// Named flat view of one parameter block; used by checkpoints, optimizers
/// and gradient checks.
struct ParameterBlock {
  std::string_view name;
  std::span<double> values;
  std::size_t rows;
  std::size_t cols;
};

inline constexpr std::size_t kGruBlockCount = 9;
std::array<ParameterBlock, kGruBlockCount> parameter_blocks(GruParameters& params);

/// Everything gru_backward needs from the forward pass.
struct GruCache {
  Matrix inputs;     // m x input
  Vector h0;         // hidden
  Matrix states;     // m x hidden, row t = h_t
  Matrix update;     // z_t
  Matrix reset;      // r_t
  Matrix candidate;  // c_t
};

struct GruForward {
  Matrix states;
  GruCache cache;
};

/// Throws DimensionMismatch.
GruForward gru_forward(const GruParameters& params, const Matrix& inputs, std::span<const double> h0);

struct GruGradients {
  GruParameters params;
  Matrix inputs;
  Vector h0;
};

/// Backpropagation through time given dL/dh_t for every t. Throws
/// CacheMismatch when the cache does not belong to `params` or the upstream
/// gradient has the wrong shape.
GruGradients gru_backward(const GruParameters& params, const GruCache& cache,
                          const Matrix& grad_states);

}  // namespace synrep
