#pragma once

#include <functional>

#include "synrep/matrix.hpp"

namespace synrep {

/// Thin SVD: a (m x n) = u (m x k) * diag(s) * v^T, k = min(m, n).
struct SvdResult {
  Matrix u;
  Vector s;  // non-negative, descending
  Matrix v;
};

inline constexpr int kSvdMaxSweeps = 100;

/// One-sided (Hestenes) Jacobi SVD. Columns of u belonging to zero singular
/// values are completed to an orthonormal set, so u and v are always
/// orthonormal. Throws NonFiniteInput, DegenerateInput (empty matrix) or
/// NoConvergence after kSvdMaxSweeps sweeps.
SvdResult svd(const Matrix& a);

/// Scores of the rows of `points` on the top two principal directions of the
/// centered point cloud. Each direction is signed so its largest-magnitude
/// coordinate is positive. Identical rows give all-zero scores.
Matrix pca_2d(const Matrix& points);

using ScalarField = std::function<double(const Matrix&)>;

/// Central finite differences at every coordinate of `at`. Returns
///   max_i |analytic_i - numeric_i| / max(1, |analytic_i| + |numeric_i|).
double check_gradient(const ScalarField& f, const Matrix& analytic_grad, const Matrix& at,
                      double eps);

}  // namespace synrep
