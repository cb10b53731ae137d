#include "synrep/gru.hpp"

#include <cmath>

#include "synrep/error.hpp"

namespace synrep {

namespace {

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void fill_uniform(Matrix& m, double scale, Rng& rng) {
  for (double& x : m.data()) x = rng.uniform(-scale, scale);
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::DimensionMismatch, std::string("GRU block ") + name + " has wrong shape");
  }
}

}  // namespace

GruParameters GruParameters::zeros(std::size_t input_dim, std::size_t hidden_dim) {
  GruParameters p;
  p.w_z = p.w_r = p.w_h = Matrix(hidden_dim, input_dim);
  p.u_z = p.u_r = p.u_h = Matrix(hidden_dim, hidden_dim);
  p.b_z = p.b_r = p.b_h = Vector(hidden_dim, 0.0);
  return p;
}

GruParameters GruParameters::uniform(std::size_t input_dim, std::size_t hidden_dim, double scale,
                                     Rng& rng) {
  GruParameters p = zeros(input_dim, hidden_dim);
  for (Matrix* m : {&p.w_z, &p.w_r, &p.w_h, &p.u_z, &p.u_r, &p.u_h}) fill_uniform(*m, scale, rng);
  return p;
}

void GruParameters::validate() const {
  const std::size_t hid = hidden_dim();
  const std::size_t in = input_dim();
  require_shape(w_r, hid, in, "W_r");
  require_shape(w_h, hid, in, "W_h");
  require_shape(u_z, hid, hid, "U_z");
  require_shape(u_r, hid, hid, "U_r");
  require_shape(u_h, hid, hid, "U_h");
  if (b_z.size() != hid || b_r.size() != hid || b_h.size() != hid) {
    throw Error(ErrorCode::DimensionMismatch, "GRU bias has wrong length");
  }
}

void GruParameters::add_scaled(const GruParameters& other, double scale) {
  if (input_dim() != other.input_dim() || hidden_dim() != other.hidden_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "add_scaled: GRU shapes differ");
  }
  other.validate();
  w_z += other.w_z * scale;
  w_r += other.w_r * scale;
  w_h += other.w_h * scale;
  u_z += other.u_z * scale;
  u_r += other.u_r * scale;
  u_h += other.u_h * scale;
  for (std::size_t j = 0; j < b_z.size(); ++j) {
    b_z[j] += scale * other.b_z[j];
    b_r[j] += scale * other.b_r[j];
    b_h[j] += scale * other.b_h[j];
  }
}

std::array<ParameterBlock, kGruBlockCount> parameter_blocks(GruParameters& p) {
  auto mat = [](std::string_view name, Matrix& m) {
    return ParameterBlock{name, m.data(), m.rows(), m.cols()};
  };
  auto vec = [](std::string_view name, Vector& v) {
    return ParameterBlock{name, std::span<double>(v), 1, v.size()};
  };
  return {mat("W_z", p.w_z), mat("W_r", p.w_r), mat("W_h", p.w_h),
          mat("U_z", p.u_z), mat("U_r", p.u_r), mat("U_h", p.u_h),
          vec("b_z", p.b_z), vec("b_r", p.b_r), vec("b_h", p.b_h)};
}

GruForward gru_forward(const GruParameters& params, const Matrix& inputs,
                       std::span<const double> h0) {
  params.validate();
  const std::size_t hid = params.hidden_dim();
  const std::size_t steps = inputs.rows();
  if (h0.size() != hid) throw Error(ErrorCode::DimensionMismatch, "h0 length differs from hidden size");
  if (steps > 0 && inputs.cols() != params.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input width differs from GRU input size");
  }

  GruCache cache{inputs, Vector(h0.begin(), h0.end()), Matrix(steps, hid), Matrix(steps, hid),
                 Matrix(steps, hid), Matrix(steps, hid)};
  Vector prev(h0.begin(), h0.end());
  Vector a_z(hid), a_r(hid), a_h(hid), gated(hid);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto x = inputs.row(t);
    a_z = params.b_z;
    a_r = params.b_r;
    a_h = params.b_h;
    matvec_add(params.w_z, x, a_z);
    matvec_add(params.u_z, prev, a_z);
    matvec_add(params.w_r, x, a_r);
    matvec_add(params.u_r, prev, a_r);

    auto z = cache.update.row(t);
    auto r = cache.reset.row(t);
    for (std::size_t j = 0; j < hid; ++j) {
      z[j] = sigmoid(a_z[j]);
      r[j] = sigmoid(a_r[j]);
      gated[j] = r[j] * prev[j];
    }
    matvec_add(params.w_h, x, a_h);
    matvec_add(params.u_h, gated, a_h);

    auto c = cache.candidate.row(t);
    auto h = cache.states.row(t);
    for (std::size_t j = 0; j < hid; ++j) {
      c[j] = std::tanh(a_h[j]);
      h[j] = (1.0 - z[j]) * prev[j] + z[j] * c[j];
    }
    prev.assign(h.begin(), h.end());
  }
  Matrix states = cache.states;
  return {std::move(states), std::move(cache)};
}

GruGradients gru_backward(const GruParameters& params, const GruCache& cache,
                          const Matrix& grad_states) {
  params.validate();
  const std::size_t hid = params.hidden_dim();
  const std::size_t in = params.input_dim();
  const std::size_t steps = cache.states.rows();
  if (cache.h0.size() != hid || cache.states.cols() != hid || cache.inputs.rows() != steps ||
      (steps > 0 && cache.inputs.cols() != in)) {
    throw Error(ErrorCode::CacheMismatch, "GRU cache does not match these parameters");
  }
  if (grad_states.rows() != steps || (steps > 0 && grad_states.cols() != hid)) {
    throw Error(ErrorCode::CacheMismatch, "upstream gradient shape differs from cached states");
  }

  GruGradients g{GruParameters::zeros(in, hid), Matrix(steps, in), Vector(hid, 0.0)};
  Vector carry(hid, 0.0);  // dL/dh_t flowing back from step t+1
  Vector dh(hid), da_z(hid), da_r(hid), da_h(hid), d_gated(hid), gated(hid), dh_prev(hid);
  for (std::size_t t = steps; t-- > 0;) {
    const auto x = cache.inputs.row(t);
    const auto z = cache.update.row(t);
    const auto r = cache.reset.row(t);
    const auto c = cache.candidate.row(t);
    const std::span<const double> prev =
        t == 0 ? std::span<const double>(cache.h0) : cache.states.row(t - 1);
    const auto upstream = grad_states.row(t);

    for (std::size_t j = 0; j < hid; ++j) {
      dh[j] = upstream[j] + carry[j];
      da_h[j] = dh[j] * z[j] * (1.0 - c[j] * c[j]);
      da_z[j] = dh[j] * (c[j] - prev[j]) * z[j] * (1.0 - z[j]);
      dh_prev[j] = dh[j] * (1.0 - z[j]);
      gated[j] = r[j] * prev[j];
      d_gated[j] = 0.0;
    }

    outer_add(da_h, x, g.params.w_h);
    outer_add(da_h, gated, g.params.u_h);
    matvec_transposed_add(params.u_h, da_h, d_gated);
    for (std::size_t j = 0; j < hid; ++j) {
      da_r[j] = d_gated[j] * prev[j] * r[j] * (1.0 - r[j]);
      dh_prev[j] += d_gated[j] * r[j];
    }

    outer_add(da_z, x, g.params.w_z);
    outer_add(da_z, prev, g.params.u_z);
    outer_add(da_r, x, g.params.w_r);
    outer_add(da_r, prev, g.params.u_r);
    for (std::size_t j = 0; j < hid; ++j) {
      g.params.b_z[j] += da_z[j];
      g.params.b_r[j] += da_r[j];
      g.params.b_h[j] += da_h[j];
    }
    matvec_transposed_add(params.u_z, da_z, dh_prev);
    matvec_transposed_add(params.u_r, da_r, dh_prev);

    auto dx = g.inputs.row(t);
    matvec_transposed_add(params.w_z, da_z, dx);
    matvec_transposed_add(params.w_r, da_r, dx);
    matvec_transposed_add(params.w_h, da_h, dx);

    carry = dh_prev;
  }
  g.h0 = carry;
  return g;
}

}  // namespace synrep
