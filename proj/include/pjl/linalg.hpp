#pragma once
// Small dense real matrices: pivoted LU determinant, LDL^T of symmetric
// positive definite matrices, products.

#include <pjl/real.hpp>

#include <utility>
#include <vector>

namespace pjl {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Real(0)) {}
  static DenseMatrix square(std::size_t n) { return DenseMatrix(n, n); }
  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Leading k x k corner.
  DenseMatrix leading(std::size_t k) const {
    DenseMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix product: shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

/// max_{ij} |a_ij - b_ij|.
inline Real max_abs_difference(const DenseMatrix& a, const DenseMatrix& b) {
  using boost::multiprecision::abs;
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidArgument, "matrix difference: shape mismatch");
  }
  Real m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Real d = abs(a(i, j) - b(i, j));
      if (d > m) m = d;
    }
  return m;
}

inline Real max_abs_entry(const DenseMatrix& a) {
  using boost::multiprecision::abs;
  Real m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (abs(a(i, j)) > m) m = abs(a(i, j));
  return m;
}

/// Determinant by LU with partial pivoting at the current default precision.
/// The sign is tracked through the permutation parity. An exactly zero pivot
/// column gives determinant 0.
inline Real determinant(DenseMatrix a) {
  using boost::multiprecision::abs;
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Real det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (abs(a(i, k)) > best) {
        best = abs(a(i, k));
        p = i;
      }
    }
    if (best == 0) return Real(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    const Real& piv = a(k, k);
    det *= piv;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = a(i, k) / piv;
      if (f == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

struct LdltFactors {
  /// Unit lower triangular factor.
  DenseMatrix L;
  std::vector<Real> D;
};

/// A = L D L^T for a symmetric matrix. Throws SingularMatrix when a pivot is
/// not strictly positive, which for a moment matrix means the working
/// precision is exhausted.
inline LdltFactors ldlt(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::InvalidArgument, "ldlt of a non-square matrix");
  LdltFactors f{DenseMatrix(n, n), std::vector<Real>(n, Real(0))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Real s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.L(i, k) * f.L(j, k) * f.D[k];
      if (i == j) {
        if (!(s > 0)) throw Error(ErrorKind::SingularMatrix, "non-positive pivot in LDL^T at index " + std::to_string(i));
        f.D[i] = s;
        f.L(i, i) = 1;
      } else {
        f.L(i, j) = s / f.D[j];
      }
    }
  }
  return f;
}

}  // namespace pjl
