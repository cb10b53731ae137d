#include <gtest/gtest.h>

#include "oracles.hpp"
#include "synrep/error.hpp"
#include "synrep/nml.hpp"
#include "synrep/numerics.hpp"

namespace synrep {
namespace {

using testing::random_matrix;

TEST(NuclearNorm, KnownValues) {
  EXPECT_NEAR(nuclear_norm(Matrix::identity(4)), 4.0, 1e-12);
  EXPECT_NEAR(nuclear_norm(Matrix{{3, 0}, {0, 4}}), 7.0, 1e-12);
  EXPECT_NEAR(nuclear_norm(Matrix{{1, 1}, {1, 1}}), 2.0, 1e-12);
  EXPECT_EQ(nuclear_norm(Matrix(3, 2)), 0.0);
}

TEST(NmlLoss, Identity) {
  const auto r = nml_loss(EmbeddingTable{Matrix::identity(4)});
  EXPECT_NEAR(r.loss, -1.0, 1e-12);
  EXPECT_LT(max_abs_diff(r.grad_table, Matrix::identity(4) * -0.25), 1e-12);
}

TEST(NmlLoss, Diagonal) {
  const auto r = nml_loss(EmbeddingTable{Matrix{{3, 0}, {0, 4}}});
  EXPECT_NEAR(r.loss, -3.5, 1e-12);
  EXPECT_LT(max_abs_diff(r.grad_table, Matrix::identity(2) * -0.5), 1e-12);
  EXPECT_NEAR(r.singular_values[0], 4.0, 1e-12);
}

TEST(NmlLoss, EmptyTable) {
  try {
    nml_loss(EmbeddingTable{Matrix(0, 4)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(NmlLoss, FiniteDifferences) {
  Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = random_matrix(6, 4, rng);
    const auto d = svd(a);
    bool close = false;
    for (std::size_t k = 0; k + 1 < d.s.size(); ++k) close |= d.s[k] - d.s[k + 1] < 1e-3;
    if (close || d.s.back() < 1e-3) continue;
    const auto r = nml_loss(EmbeddingTable{a});
    auto f = [](const Matrix& x) { return nml_loss(EmbeddingTable{x}).loss; };
    ASSERT_LE(check_gradient(f, r.grad_table, a, 1e-5), 1e-4);
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(NmlLoss, GradientStepsIncreaseNuclearNorm) {
  Rng rng(5);
  Matrix t = random_matrix(10, 8, rng, 0.08);
  double previous = nuclear_norm(t);
  for (int step = 0; step < 100; ++step) {
    t -= nml_loss(EmbeddingTable{t}).grad_table * 1e-2;
    const double now = nuclear_norm(t);
    ASSERT_GT(now, previous);
    previous = now;
  }
}

TEST(NmlLoss, GradientIsScaleInvariant) {
  Rng rng(6);
  const Matrix a = random_matrix(7, 5, rng);
  const auto g1 = nml_loss(EmbeddingTable{a}).grad_table;
  const auto g2 = nml_loss(EmbeddingTable{a * 37.0}).grad_table;
  EXPECT_LT(max_abs_diff(g1, g2), 1e-12);
}

TEST(NmlLoss, BoundedByFrobenius) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = random_matrix(1 + rng.below(9), 1 + rng.below(9), rng);
    const auto r = nml_loss(EmbeddingTable{a});
    ASSERT_GE(-r.loss * static_cast<double>(a.rows()), a.frobenius_norm() - 1e-12);
  }
}

}  // namespace
}  // namespace synrep
