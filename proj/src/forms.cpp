#include "hypcomm/forms.hpp"

#include <cctype>

#include "hypcomm/error.hpp"
#include "hypcomm/linalg.hpp"

namespace hypcomm {

DiagonalForm::DiagonalForm(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw PreconditionError("diagonal form needs at least one coefficient");
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    if (coefficients_[i].is_zero())
      throw PreconditionError("coefficient " + std::to_string(i + 1) + " is zero; forms must be non-degenerate");
}

DiagonalForm DiagonalForm::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (pos >= text.size() || text[pos] != '<') throw ParseError("expected '<'", pos);
  ++pos;
  std::vector<Rational> coeffs;
  for (;;) {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != '>') ++pos;
    if (pos >= text.size()) throw ParseError("expected ',' or '>'", pos);
    const std::string_view token = text.substr(start, pos - start);
    Rational value;
    try {
      value = Rational::parse(token);
    } catch (const ParseError& e) {
      throw ParseError("bad coefficient '" + std::string(token) + "'", start + e.position());
    }
    if (value.is_zero()) throw ParseError("zero coefficient", start);
    coeffs.push_back(value);
    if (text[pos] == '>') break;
    ++pos;
  }
  ++pos;
  skip_space();
  if (pos != text.size()) throw ParseError("trailing characters after '>'", pos);
  return DiagonalForm(std::move(coeffs));
}

MatrixQ DiagonalForm::matrix() const {
  const auto n = static_cast<Eigen::Index>(coefficients_.size());
  MatrixQ m = MatrixQ::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = coefficients_[static_cast<std::size_t>(i)];
  return m;
}

std::string DiagonalForm::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out += ',';
    out += coefficients_[i].to_string();
  }
  return out + '>';
}

SymmetricForm::SymmetricForm(MatrixQ entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw PreconditionError("symmetric form needs a nonempty square matrix");
  if (!(entries_ == entries_.transpose())) throw PreconditionError("matrix is not symmetric");
  if (exact_determinant(entries_).is_zero()) throw DegenerateFormError("symmetric form is degenerate (det = 0)");
}

Diagonalization diagonalize(const SymmetricForm& q) {
  auto result = congruence_diagonalize(q.matrix());
  if (!result) throw DegenerateFormError("symmetric form is degenerate (det = 0)");
  std::vector<Rational> coeffs(result->diagonal.begin(), result->diagonal.end());
  return {DiagonalForm(std::move(coeffs)), std::move(result->transform)};
}

Signature signature(const DiagonalForm& f) {
  Signature s;
  for (const auto& a : f.coefficients()) (a.sign() > 0 ? s.positive : s.negative)++;
  return s;
}

SquareClass discriminant(const DiagonalForm& f) {
  SquareClass d = SquareClass::one();
  for (const auto& a : f.coefficients()) d = d * square_class(a);
  return d;
}

DiagonalForm direct_sum(const DiagonalForm& f, const DiagonalForm& g) {
  std::vector<Rational> coeffs = f.coefficients();
  coeffs.insert(coeffs.end(), g.coefficients().begin(), g.coefficients().end());
  return DiagonalForm(std::move(coeffs));
}

DiagonalForm scale(const Rational& c, const DiagonalForm& f) {
  if (c.is_zero()) throw PreconditionError("scale: scalar must be nonzero");
  std::vector<Rational> coeffs = f.coefficients();
  for (auto& a : coeffs) a *= c;
  return DiagonalForm(std::move(coeffs));
}

DiagonalForm lorentz_j(int rank) {
  if (rank < 1) throw PreconditionError("lorentz_j: rank must be at least 1");
  std::vector<Rational> coeffs(static_cast<std::size_t>(rank), Rational(1));
  coeffs.back() = Rational(-1);
  return DiagonalForm(std::move(coeffs));
}

DiagonalForm hyperbolic_plane() { return DiagonalForm{Rational(1), Rational(-1)}; }

}  // namespace hypcomm
