#pragma once

#include <optional>
#include <utility>

#include <Eigen/Core>

namespace hypcomm {

// Exact dense linear algebra over a field scalar (Rational in practice).
// Pivots are chosen as the first nonzero entry, never by magnitude.

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Product that skips zero entries of the left factor; holonomy matrices are mostly zero.
template <typename DerivedA, typename DerivedB>
DenseMatrix<typename DerivedA::Scalar> exact_product(const Eigen::MatrixBase<DerivedA>& a,
                                                     const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (x == Scalar(0)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!(b(k, j) == Scalar(0))) out(i, j) += x * b(k, j);
    }
  return out;
}

/// Gauss-Jordan inverse; empty when the matrix is singular.
template <typename Derived>
std::optional<DenseMatrix<typename Derived::Scalar>> exact_inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  DenseMatrix<Scalar> a = m;
  DenseMatrix<Scalar> inv = DenseMatrix<Scalar>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    const Scalar scale = Scalar(1) / a(col, col);
    a.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == Scalar(0)) continue;
      const Scalar f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  DenseMatrix<Scalar> a = m;
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == Scalar(0)) continue;
      const Scalar f = a(r, col) / a(col, col);
      a.row(r) -= f * a.row(col);
    }
  }
  return det;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> a = m;
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == a.rows()) continue;
    a.row(pivot).swap(a.row(rank));
    for (Eigen::Index r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == Scalar(0)) continue;
      const Scalar f = a(r, col) / a(rank, col);
      a.row(r) -= f * a.row(rank);
    }
    ++rank;
  }
  return rank;
}

/// Result of a congruence diagonalization: transform^T * Q * transform = diag(diagonal).
template <typename Scalar>
struct Congruence {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> diagonal;
  DenseMatrix<Scalar> transform;
};

/// Symmetric Gaussian elimination by simultaneous row and column operations.
/// When the active block has a zero diagonal, column j is added to column k
/// to manufacture a pivot.  Empty when Q is degenerate.
template <typename Derived>
std::optional<Congruence<typename Derived::Scalar>> congruence_diagonalize(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = q.rows();
  DenseMatrix<Scalar> a = q;
  DenseMatrix<Scalar> t = DenseMatrix<Scalar>::Identity(n, n);

  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) == Scalar(0)) {
      Eigen::Index j = k + 1;
      while (j < n && a(j, j) == Scalar(0)) ++j;
      if (j < n) {
        a.row(j).swap(a.row(k));
        a.col(j).swap(a.col(k));
        t.col(j).swap(t.col(k));
      } else {
        j = k + 1;
        while (j < n && a(k, j) == Scalar(0)) ++j;
        if (j == n) return std::nullopt;
        // col k += col j, row k += row j; new pivot is 2 a(k, j).
        a.col(k) += a.col(j);
        a.row(k) += a.row(j);
        t.col(k) += t.col(j);
      }
    }
    const Scalar pivot = a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == Scalar(0)) continue;
      const Scalar f = a(i, k) / pivot;
      a.col(i) -= f * a.col(k);
      a.row(i) -= f * a.row(k);
      t.col(i) -= f * t.col(k);
    }
  }
  return Congruence<Scalar>{a.diagonal(), std::move(t)};
}

}  // namespace hypcomm
