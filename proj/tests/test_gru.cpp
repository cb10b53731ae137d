#include <gtest/gtest.h>

#include "gradcheck.hpp"
#include "oracles.hpp"
#include "synrep/error.hpp"
#include "synrep/gru.hpp"

namespace synrep {
namespace {

using testing::check_block;
using testing::random_matrix;

// L = sum_t <G_t, h_t> for a fixed random upstream G.
double projected_loss(const GruParameters& p, const Matrix& x, const Vector& h0, const Matrix& g) {
  const Matrix h = gru_forward(p, x, h0).states;
  double s = 0.0;
  for (std::size_t i = 0; i < h.data().size(); ++i) s += h.data()[i] * g.data()[i];
  return s;
}

TEST(GruForward, ZeroParametersGiveZeroStates) {
  const auto p = GruParameters::zeros(3, 4);
  const Matrix x{{1, 2, 3}, {-1, 0, 5}};
  const auto out = gru_forward(p, x, Vector(4, 0.0));
  for (double v : out.states.data()) EXPECT_EQ(v, 0.0);
  // z = 0.5, c = 0: the state halves each step.
  const auto decay = gru_forward(p, x, Vector(4, 1.0));
  EXPECT_DOUBLE_EQ(decay.states(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(decay.states(1, 3), 0.25);
}

TEST(GruForward, EmptySequence) {
  Rng rng(1);
  const auto p = GruParameters::uniform(3, 4, 0.08, rng);
  const auto out = gru_forward(p, Matrix(0, 3), Vector(4, 0.0));
  EXPECT_EQ(out.states.rows(), 0u);
}

TEST(GruForward, MatchesReference) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t in = 1 + rng.below(6), hid = 1 + rng.below(6), m = 1 + rng.below(10);
    const auto p = GruParameters::uniform(in, hid, 0.8, rng);
    const Matrix x = random_matrix(m, in, rng, 2.0);
    const Matrix h0m = random_matrix(1, hid, rng);
    const Vector h0(h0m.data().begin(), h0m.data().end());
    std::vector<Vector> xs;
    for (std::size_t t = 0; t < m; ++t) xs.emplace_back(x.row(t).begin(), x.row(t).end());
    const auto ref = testing::reference_gru(p, xs, h0);
    const auto out = gru_forward(p, x, h0);
    for (std::size_t t = 0; t < m; ++t)
      for (std::size_t j = 0; j < hid; ++j) ASSERT_NEAR(out.states(t, j), ref[t][j], 1e-12);
  }
}

TEST(GruForward, DimensionErrors) {
  const auto p = GruParameters::zeros(3, 4);
  EXPECT_THROW(gru_forward(p, Matrix(2, 2), Vector(4, 0.0)), Error);
  EXPECT_THROW(gru_forward(p, Matrix(2, 3), Vector(3, 0.0)), Error);
}

TEST(GruBackward, ZeroUpstreamGivesZeroGradients) {
  Rng rng(2);
  const auto p = GruParameters::uniform(3, 5, 0.5, rng);
  const auto fwd = gru_forward(p, random_matrix(4, 3, rng), Vector(5, 0.1));
  const auto g = gru_backward(p, fwd.cache, Matrix(4, 5));
  EXPECT_EQ(g.params, GruParameters::zeros(3, 5));
  for (double v : g.inputs.data()) EXPECT_EQ(v, 0.0);
  for (double v : g.h0) EXPECT_EQ(v, 0.0);
}

TEST(GruBackward, LinearInUpstream) {
  Rng rng(3);
  const auto p = GruParameters::uniform(3, 5, 0.5, rng);
  const auto fwd = gru_forward(p, random_matrix(4, 3, rng), Vector(5, 0.0));
  const Matrix g = random_matrix(4, 5, rng);
  const auto once = gru_backward(p, fwd.cache, g);
  const auto twice = gru_backward(p, fwd.cache, g * 2.0);
  EXPECT_LT(max_abs_diff(twice.params.u_h, once.params.u_h * 2.0), 1e-14);
  EXPECT_LT(max_abs_diff(twice.inputs, once.inputs * 2.0), 1e-14);
}

TEST(GruBackward, CacheMismatch) {
  Rng rng(4);
  const auto p = GruParameters::uniform(3, 5, 0.5, rng);
  const auto fwd = gru_forward(p, random_matrix(4, 3, rng), Vector(5, 0.0));
  try {
    gru_backward(p, fwd.cache, Matrix(3, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CacheMismatch);
  }
  EXPECT_THROW(gru_backward(GruParameters::zeros(3, 6), fwd.cache, Matrix(4, 6)), Error);
}

TEST(GruBackward, FiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t in = 1 + rng.below(4), hid = 1 + rng.below(5), m = 1 + rng.below(6);
    auto p = GruParameters::uniform(in, hid, 0.8, rng);
    // Non-zero biases so their gradients are exercised away from the init.
    for (Vector* b : {&p.b_z, &p.b_r, &p.b_h})
      for (double& v : *b) v = rng.uniform(-0.5, 0.5);
    Matrix x = random_matrix(m, in, rng, 1.5);
    const Matrix h0m = random_matrix(1, hid, rng, 0.5);
    Vector h0(h0m.data().begin(), h0m.data().end());
    const Matrix g = random_matrix(m, hid, rng);

    const auto fwd = gru_forward(p, x, h0);
    auto grads = gru_backward(p, fwd.cache, g);
    auto loss = [&] { return projected_loss(p, x, h0, g); };

    auto blocks = parameter_blocks(p);
    auto grad_blocks = parameter_blocks(grads.params);
    for (std::size_t b = 0; b < kGruBlockCount; ++b) {
      ASSERT_LE(check_block(blocks[b].values, grad_blocks[b].values, loss), 1e-5) << blocks[b].name;
    }
    ASSERT_LE(check_block(x.data(), grads.inputs.data(), loss), 1e-5);
    ASSERT_LE(check_block(h0, grads.h0, loss), 1e-5);
  }
}

TEST(GruParameters, BlocksAndUniformDraw) {
  Rng a(9), b(9);
  auto p = GruParameters::uniform(2, 3, 0.08, a);
  EXPECT_EQ(p, GruParameters::uniform(2, 3, 0.08, b));
  for (double v : p.w_z.data()) {
    EXPECT_GT(v, -0.08);
    EXPECT_LT(v, 0.08);
  }
  for (double v : p.b_h) EXPECT_EQ(v, 0.0);
  const auto blocks = parameter_blocks(p);
  EXPECT_EQ(blocks[0].values.size(), 6u);
  EXPECT_EQ(blocks[3].values.size(), 9u);
  EXPECT_EQ(blocks[8].values.size(), 3u);
  EXPECT_EQ(blocks[0].values.data(), p.w_z.data().data());
}

}  // namespace
}  // namespace synrep
