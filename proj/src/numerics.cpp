#include "synrep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "synrep/error.hpp"

namespace synrep {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

double column_dot(const Matrix& a, std::size_t p, std::size_t q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, p) * a(i, q);
  return acc;
}

void rotate_columns(Matrix& a, std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double ap = a(i, p);
    const double aq = a(i, q);
    a(i, p) = c * ap - s * aq;
    a(i, q) = s * ap + c * aq;
  }
}

// Fills column `col` of u with a unit vector orthogonal to columns [0, col).
// Picks the standard basis vector with the largest residual after two rounds
// of Gram-Schmidt, which is always at least sqrt((m - col) / m).
void complete_column(Matrix& u, std::size_t col) {
  const std::size_t m = u.rows();
  Vector best;
  double best_norm = -1.0;
  for (std::size_t k = 0; k < m; ++k) {
    Vector e(m, 0.0);
    e[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < col; ++j) {
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += u(i, j) * e[i];
        for (std::size_t i = 0; i < m; ++i) e[i] -= proj * u(i, j);
      }
    }
    const double norm = std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0));
    if (norm > best_norm) {
      best_norm = norm;
      best = std::move(e);
    }
  }
  for (std::size_t i = 0; i < m; ++i) u(i, col) = best[i] / best_norm;
}

SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  const double fro = a.frobenius_norm();
  const double negligible = (kEpsilon * fro) * (kEpsilon * fro);
  const double tol = kEpsilon * static_cast<double>(m);

  bool converged = false;
  for (int sweep = 0; sweep < kSvdMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_dot(w, p, p);
        const double beta = column_dot(w, q, q);
        const double gamma = column_dot(w, p, q);
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_columns(w, p, q, c, s);
        rotate_columns(v, p, q, c, s);
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi SVD did not converge in " + std::to_string(kSvdMaxSweeps) + " sweeps");
  }

  Vector norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(column_dot(w, j, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out{Matrix(m, n), Vector(n), Matrix(n, n)};
  const double rank_tol = kEpsilon * static_cast<double>(std::max(m, n)) * (n ? norms[order[0]] : 0.0);
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s[k] = norms[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (norms[j] > rank_tol && norms[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = w(i, j) / norms[j];
    } else {
      missing.push_back(k);
    }
  }
  // Null-space columns come last in the descending order.
  for (std::size_t k : missing) complete_column(out.u, k);
  return out;
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(ErrorCode::DegenerateInput, "svd of an empty matrix");
  }
  if (!a.all_finite()) throw Error(ErrorCode::NonFiniteInput, "svd input has non-finite entries");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(a.transpose());
  return {std::move(t.v), std::move(t.s), std::move(t.u)};
}

Matrix pca_2d(const Matrix& points) {
  if (points.rows() < 2 || points.cols() < 2) {
    throw Error(ErrorCode::DegenerateInput, "pca_2d needs at least 2 rows and 2 columns");
  }
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  Matrix centered = points;
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += points(r, c);
    mean /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) centered(r, c) -= mean;
  }
  const SvdResult dec = svd(centered);
  Matrix scores(n, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    std::size_t lead = 0;
    for (std::size_t i = 1; i < d; ++i) {
      if (std::abs(dec.v(i, k)) > std::abs(dec.v(lead, k))) lead = i;
    }
    const double sign = dec.v(lead, k) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) acc += centered(r, i) * dec.v(i, k);
      scores(r, k) = sign * acc;
    }
  }
  return scores;
}

double check_gradient(const ScalarField& f, const Matrix& analytic_grad, const Matrix& at,
                      double eps) {
  if (!(eps > 0.0 && eps <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, "check_gradient: eps must lie in (0, 1e-2]");
  }
  if (analytic_grad.rows() != at.rows() || analytic_grad.cols() != at.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "check_gradient: gradient shape differs from point");
  }
  Matrix probe = at;
  double worst = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double original = probe.data()[i];
    probe.data()[i] = original + eps;
    const double plus = f(probe);
    probe.data()[i] = original - eps;
    const double minus = f(probe);
    probe.data()[i] = original;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      throw Error(ErrorCode::NonFiniteEvaluation,
                  "check_gradient: f is not finite near coordinate " + std::to_string(i));
    }
    const double numeric = (plus - minus) / (2.0 * eps);
    const double analytic = analytic_grad.data()[i];
    const double err =
        std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic) + std::abs(numeric));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace synrep
