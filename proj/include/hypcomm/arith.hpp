#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypcomm/rational.hpp"

namespace hypcomm {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  std::vector<Integer> primes() const;
};

/// Trial division, with Miller-Rabin and Pollard rho for cofactors past the trial bound.
/// Throws PreconditionError on zero.
Factorization factor(const Integer& n);

/// Deterministic for n < 3.3e24; beyond that a 40-round probabilistic test.
bool is_prime(const Integer& n);

/// p-adic valuation of a nonzero integer.
unsigned valuation(Integer n, const Integer& p);

/// Class of a nonzero rational in Q*/(Q*)^2, carried by its signed squarefree representative.
class SquareClass {
 public:
  /// Reduces any nonzero integer to its squarefree part.
  explicit SquareClass(const Integer& value);

  static SquareClass one() { return SquareClass(Integer(1)); }

  const Integer& representative() const { return rep_; }
  int sign() const { return sgn(rep_); }
  bool is_one() const { return rep_ == 1; }

  /// Product of two classes, again squarefree.
  SquareClass operator*(const SquareClass& other) const;

  std::string to_string() const { return rep_.get_str(); }

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }
  friend std::strong_ordering operator<=>(const SquareClass& a, const SquareClass& b) {
    const int c = cmp(a.rep_, b.rep_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Trusted {};
  SquareClass(Integer squarefree, Trusted) : rep_(std::move(squarefree)) {}

  Integer rep_;
};

/// Throws PreconditionError on zero.
SquareClass square_class(const Rational& r);

/// Legendre symbol (a/p) for an odd prime p; rejects p = 2 and composite p.
int legendre(const Integer& a, const Integer& p);

/// A place of Q: a finite prime or the real place.  Finite places order by
/// prime and the real place sorts last.
class Place {
 public:
  static Place infinity() { return Place(); }
  /// Throws PreconditionError unless p is prime.
  static Place prime(const Integer& p);

  /// "inf" or a decimal prime.
  static Place parse(std::string_view text);

  bool is_infinite() const { return prime_ == 0; }
  bool is_finite() const { return prime_ != 0; }
  /// Zero for the real place.
  const Integer& p() const { return prime_; }

  std::string to_string() const { return is_infinite() ? "inf" : prime_.get_str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

  friend std::ostream& operator<<(std::ostream& os, const Place& v) { return os << v.to_string(); }

 private:
  Place() = default;
  explicit Place(Integer p) : prime_(std::move(p)) {}

  friend Place unchecked_prime_place(Integer p);

  Integer prime_;
};

/// Builds a finite place without a primality check; callers guarantee p is prime.
Place unchecked_prime_place(Integer p);

/// True iff r is a square in the completion of Q at v.
bool is_local_square(const Rational& r, const Place& v);

}  // namespace hypcomm
