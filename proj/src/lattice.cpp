#include "hypcomm/lattice.hpp"

#include <vector>

namespace hypcomm {

namespace {

Integer lcm_of_denominators(const MatrixQ& m) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Integer d = m(i, j).denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  return l;
}

void add_row_multiple(MatrixQ& m, Eigen::Index target, Eigen::Index source, const Rational& factor) {
  if (factor.is_zero()) return;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!m(source, j).is_zero()) m(target, j) -= factor * m(source, j);
}

}  // namespace

LatticeEchelon lattice_echelon(const MatrixQ& generators) {
  const Eigen::Index rows = generators.rows();
  const Eigen::Index cols = generators.cols();
  const Rational scale(lcm_of_denominators(generators));
  MatrixQ h = generators * scale;
  MatrixQ u = MatrixQ::Identity(rows, rows);

  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = pivot_row; i < rows; ++i)
        if (!h(i, col).is_zero() && (best < 0 || h(i, col).abs() < h(best, col).abs())) best = i;
      if (best < 0) break;
      if (best != pivot_row) {
        h.row(best).swap(h.row(pivot_row));
        u.row(best).swap(u.row(pivot_row));
      }
      bool cleared = true;
      for (Eigen::Index i = pivot_row + 1; i < rows; ++i) {
        if (h(i, col).is_zero()) continue;
        const Rational q((h(i, col) / h(pivot_row, col)).floor());
        add_row_multiple(h, i, pivot_row, q);
        add_row_multiple(u, i, pivot_row, q);
        if (!h(i, col).is_zero()) cleared = false;
      }
      if (cleared) break;
    }
    if (h(pivot_row, col).is_zero()) continue;
    if (h(pivot_row, col).sign() < 0) {
      h.row(pivot_row) *= Rational(-1);
      u.row(pivot_row) *= Rational(-1);
    }
    for (Eigen::Index i = 0; i < pivot_row; ++i) {
      const Rational q((h(i, col) / h(pivot_row, col)).floor());
      add_row_multiple(h, i, pivot_row, q);
      add_row_multiple(u, i, pivot_row, q);
    }
    ++pivot_row;
  }

  LatticeEchelon out;
  out.basis = h.topRows(pivot_row) / scale;
  out.transform = u.topRows(pivot_row);
  return out;
}

std::optional<VectorQ> lattice_coefficients(const MatrixQ& echelon_basis, const VectorQ& v) {
  VectorQ residual = v;
  VectorQ coeffs(echelon_basis.rows());
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < echelon_basis.rows(); ++i) {
    while (echelon_basis(i, col).is_zero()) ++col;
    const Rational c = residual(col) / echelon_basis(i, col);
    if (!c.is_integer()) return std::nullopt;
    coeffs(i) = c;
    if (!c.is_zero()) residual -= c * echelon_basis.row(i).transpose();
  }
  for (Eigen::Index j = 0; j < residual.size(); ++j)
    if (!residual(j).is_zero()) return std::nullopt;
  return coeffs;
}

MatrixQ stack_rows(const std::vector<VectorQ>& rows, Eigen::Index dimension) {
  MatrixQ out(static_cast<Eigen::Index>(rows.size()), dimension);
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

}  // namespace hypcomm
