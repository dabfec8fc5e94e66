#pragma once

#include <optional>

#include "hypcomm/rational.hpp"

namespace hypcomm {

/// Z-span of a set of rational row vectors, in Hermite normal form.
struct LatticeEchelon {
  /// Rows: a basis of the span, echelon with positive pivots and reduced entries above them.
  MatrixQ basis;
  /// Integer matrix with basis = transform * generators.
  MatrixQ transform;
};

/// Rows of `generators` are the spanning vectors (zero rows allowed).
LatticeEchelon lattice_echelon(const MatrixQ& generators);

inline MatrixQ lattice_basis(const MatrixQ& generators) { return lattice_echelon(generators).basis; }

/// Integer coefficients c with c^T * basis == v, for a basis from lattice_echelon;
/// empty when v is outside the lattice.
std::optional<VectorQ> lattice_coefficients(const MatrixQ& echelon_basis, const VectorQ& v);

inline bool lattice_contains(const MatrixQ& echelon_basis, const VectorQ& v) {
  return lattice_coefficients(echelon_basis, v).has_value();
}

/// Stacks row vectors into a matrix.
MatrixQ stack_rows(const std::vector<VectorQ>& rows, Eigen::Index dimension);

}  // namespace hypcomm
