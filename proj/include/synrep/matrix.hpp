#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace synrep {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Small and boring on purpose: the largest
// matrices in this project are embedding tables of a few hundred entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  Vector column(std::size_t c) const;

  bool all_finite() const noexcept;
  double frobenius_norm() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double scale) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, double scale);
Matrix operator*(double scale, Matrix rhs);

Matrix matmul(const Matrix& a, const Matrix& b);

// y = a * x
Vector matvec(const Matrix& a, std::span<const double> x);
// y += a * x
void matvec_add(const Matrix& a, std::span<const double> x, std::span<double> y);
// y += a^T * x
void matvec_transposed_add(const Matrix& a, std::span<const double> x, std::span<double> y);
// a += x * y^T
void outer_add(std::span<const double> x, std::span<const double> y, Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace synrep
