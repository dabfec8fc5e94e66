#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hypcomm/arith.hpp"
#include "hypcomm/rational.hpp"

namespace hypcomm {

/// (r, s): numbers of positive and negative squares over the reals.
struct Signature {
  int positive = 0;
  int negative = 0;

  Signature swapped() const { return {negative, positive}; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Diagonal rational quadratic form <a1, ..., an>, all coefficients nonzero.
///
/// Coefficients are stored as given; square-class reduction happens only
/// inside invariant computations.
class DiagonalForm {
 public:
  /// Throws PreconditionError on an empty list or a zero coefficient.
  explicit DiagonalForm(std::vector<Rational> coefficients);
  DiagonalForm(std::initializer_list<Rational> coefficients)
      : DiagonalForm(std::vector<Rational>(coefficients)) {}

  /// Parses "<a1,a2,...,an>".  Throws ParseError with the offending position.
  static DiagonalForm parse(std::string_view text);

  int rank() const { return static_cast<int>(coefficients_.size()); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  const Rational& operator[](int i) const { return coefficients_[static_cast<std::size_t>(i)]; }

  MatrixQ matrix() const;

  std::string to_string() const;

  friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;

 private:
  std::vector<Rational> coefficients_;
};

/// Non-degenerate symmetric Gram matrix: q(x) = x^T Q x.
class SymmetricForm {
 public:
  /// Throws PreconditionError unless square and symmetric, DegenerateFormError if det Q = 0.
  explicit SymmetricForm(MatrixQ entries);

  const MatrixQ& matrix() const { return entries_; }
  int rank() const { return static_cast<int>(entries_.rows()); }

 private:
  MatrixQ entries_;
};

struct Diagonalization {
  DiagonalForm form;
  /// transform^T * Q * transform == form.matrix() exactly.
  MatrixQ transform;
};

Diagonalization diagonalize(const SymmetricForm& q);

Signature signature(const DiagonalForm& f);
SquareClass discriminant(const DiagonalForm& f);

DiagonalForm direct_sum(const DiagonalForm& f, const DiagonalForm& g);
/// Throws PreconditionError on c = 0.
DiagonalForm scale(const Rational& c, const DiagonalForm& f);
/// <1, ..., 1, -1> of the given rank (at least 1).
DiagonalForm lorentz_j(int rank);

/// <1, -1>
DiagonalForm hyperbolic_plane();

}  // namespace hypcomm
