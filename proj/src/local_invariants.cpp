#include "hypcomm/local_invariants.hpp"

#include "hypcomm/error.hpp"

namespace hypcomm {

namespace {

unsigned long residue(const Integer& n, unsigned long m) { return mpz_fdiv_ui(n.get_mpz_t(), m); }

// Splits n = p^k * unit and returns k.
unsigned strip(Integer& n, const Integer& p) {
  unsigned k = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

// Local formulas for nonzero integers a, b.
int hilbert_integers(Integer a, Integer b, const Place& v) {
  if (v.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const Integer& p = v.p();
  const unsigned alpha = strip(a, p);
  const unsigned beta = strip(b, p);
  if (p == 2) {
    auto eps = [](const Integer& u) { return residue(u, 4) == 3 ? 1u : 0u; };
    auto omega = [](const Integer& u) {
      const unsigned long r = residue(u, 8);
      return (r == 3 || r == 5) ? 1u : 0u;
    };
    const unsigned exponent = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return exponent % 2 == 0 ? 1 : -1;
  }
  int out = 1;
  if ((alpha * beta) % 2 == 1 && residue(p, 4) == 3) out = -out;
  if (beta % 2 == 1) out *= mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
  if (alpha % 2 == 1) out *= mpz_legendre(b.get_mpz_t(), p.get_mpz_t());
  return out;
}

std::vector<SquareClass> coefficient_classes(const DiagonalForm& f) {
  std::vector<SquareClass> out;
  out.reserve(f.coefficients().size());
  for (const auto& a : f.coefficients()) out.push_back(square_class(a));
  return out;
}

int hasse_witt_classes(const std::vector<SquareClass>& classes, const Place& v) {
  int eps = 1;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) eps *= hilbert(classes[i], classes[j], v);
  return eps;
}

}  // namespace

int hilbert(const SquareClass& a, const SquareClass& b, const Place& v) {
  return hilbert_integers(a.representative(), b.representative(), v);
}

int hilbert(const Rational& a, const Rational& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) throw PreconditionError("hilbert: arguments must be nonzero");
  return hilbert(square_class(a), square_class(b), v);
}

int hasse_witt(const DiagonalForm& f, const Place& v) { return hasse_witt_classes(coefficient_classes(f), v); }

PlaceSet places_for(const Integer& n) {
  PlaceSet out{Place::infinity(), unchecked_prime_place(Integer(2))};
  if (n != 0)
    for (const auto& pp : factor(n).factors) out.insert(unchecked_prime_place(pp.prime));
  return out;
}

PlaceSet relevant_places(const DiagonalForm& f) {
  PlaceSet out{Place::infinity(), unchecked_prime_place(Integer(2))};
  for (const auto& a : f.coefficients()) {
    out.merge(places_for(a.numerator()));
    out.merge(places_for(a.denominator()));
  }
  return out;
}

InvariantProfile profile(const DiagonalForm& f) {
  InvariantProfile out;
  out.rank = f.rank();
  out.signature = signature(f);
  const auto classes = coefficient_classes(f);
  SquareClass d = SquareClass::one();
  PlaceSet places{Place::infinity(), unchecked_prime_place(Integer(2))};
  for (const auto& c : classes) {
    d = d * c;
    places.merge(places_for(c.representative()));
  }
  out.discriminant = d;
  for (const auto& v : places)
    if (hasse_witt_classes(classes, v) == -1) out.negative_places.insert(v);
  return out;
}

}  // namespace hypcomm
