#pragma once

#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamma_cone {

/// Dense row-major real matrix. Small (dimension <= 256) by design of the
/// callers, so no blocking or expression templates.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto &r : rows) {
      if (r.size() != cols_)
        throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_)
      m = std::max(m, std::abs(v));
    return m;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
      t += (*this)(i, i);
    return t;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  /// x^T M x
  double quadratic(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < cols_; ++j)
        row += (*this)(i, j) * x[j];
      s += x[i] * row;
    }
    return s;
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix &b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix &b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(double s, Matrix a) {
    for (double &v : a.data_)
      v *= s;
    return a;
  }

private:
  void require_same_shape(const Matrix &b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Eigen-decomposition of a symmetric matrix: ascending eigenvalues, and
/// orthonormal eigenvectors stored as the columns of `vectors`.
struct Eigensystem {
  std::vector<double> values;
  Matrix vectors;

  std::vector<double> vector(std::size_t k) const { return vectors.column(k); }
};

inline constexpr std::size_t eigensolve_max_dimension = 256;

/// Flips the sign of v so that its first entry with |v_i| > tol is positive.
inline void normalize_sign(std::span<double> v, double tol = 1e-12) {
  for (double x : v) {
    if (std::abs(x) > tol) {
      if (x < 0)
        for (double &y : v)
          y = -y;
      return;
    }
  }
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps the strict upper triangle in row-major order until the largest
/// off-diagonal entry is <= 1e-12 * max|entry| of the input. Deterministic
/// for a given input. Eigenvector signs are normalized with normalize_sign.
inline Eigensystem eigensolve_symmetric(const Matrix &input) {
  const std::size_t n = input.rows();
  if (input.cols() != n)
    throw std::invalid_argument("eigensolve_symmetric: matrix is not square");
  if (n > eigensolve_max_dimension)
    throw std::invalid_argument("eigensolve_symmetric: dimension " +
                                std::to_string(n) + " exceeds 256");
  const double scale = input.max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(input(i, j) - input(j, i)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument(
            "eigensolve_symmetric: matrix is not symmetric at (" +
            std::to_string(i) + "," + std::to_string(j) + ")");

  Matrix a = input;
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-12 * scale;
  constexpr int max_sweeps = 100;

  auto off_diagonal_max = [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        m = std::max(m, std::abs(a(i, j)));
    return m;
  };

  int sweep = 0;
  while (off_diagonal_max() > threshold) {
    if (++sweep > max_sweeps)
      throw std::runtime_error("eigensolve_symmetric: Jacobi did not converge");
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= threshold * 1e-3)
          continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  Eigensystem out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    auto col = v.column(order[k]);
    normalize_sign(col);
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, k) = col[i];
  }
  return out;
}

/// Canonical orthonormal basis of span(vectors): reduced row echelon form
/// followed by Gram-Schmidt in pivot order. Independent of which basis of
/// the subspace was passed in, up to rounding.
inline std::vector<std::vector<double>>
canonical_basis(std::vector<std::vector<double>> vectors, double tol = 1e-8) {
  if (vectors.empty())
    return vectors;
  const std::size_t dim = vectors.front().size();
  const std::size_t k = vectors.size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < k; ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < k; ++r)
      if (std::abs(vectors[r][col]) > std::abs(vectors[pivot][col]))
        pivot = r;
    if (std::abs(vectors[pivot][col]) <= tol)
      continue;
    std::swap(vectors[row], vectors[pivot]);
    const double p = vectors[row][col];
    for (double &x : vectors[row])
      x /= p;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row)
        continue;
      const double factor = vectors[r][col];
      if (factor == 0.0)
        continue;
      for (std::size_t c = 0; c < dim; ++c)
        vectors[r][c] -= factor * vectors[row][c];
    }
    ++row;
  }
  vectors.resize(row);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double proj = dot(vectors[i], vectors[j]);
      for (std::size_t c = 0; c < dim; ++c)
        vectors[i][c] -= proj * vectors[j][c];
    }
    const double nrm = norm2(vectors[i]);
    for (double &x : vectors[i])
      x /= nrm;
    normalize_sign(vectors[i]);
  }
  return vectors;
}

} // namespace gamma_cone
