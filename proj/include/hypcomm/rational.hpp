#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace hypcomm {

using Integer = mpz_class;

/// Exact rational number in lowest terms with positive denominator.
///
/// A value type over GMP's mpq; unlike mpq_class it has no expression
/// templates, so it can serve as an Eigen scalar.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T value) : value_(static_cast<long>(value)) {}

  template <std::unsigned_integral T>
  Rational(T value) : value_(static_cast<unsigned long>(value)) {}

  Rational(const Integer& value) : value_(value) {}

  /// Throws PreconditionError when `denominator` is zero.
  Rational(const Integer& numerator, const Integer& denominator);

  /// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Integer floor() const;
  Rational abs() const;
  Rational inverse() const;

  std::string to_string() const { return value_.get_str(); }

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const {
    Rational out;
    out.value_ = -value_;
    return out;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class value_;
};

using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline Rational abs(const Rational& r) { return r.abs(); }

std::size_t hash_value(const Rational& r);

}  // namespace hypcomm

template <>
struct std::hash<hypcomm::Rational> {
  std::size_t operator()(const hypcomm::Rational& r) const { return hypcomm::hash_value(r); }
};

namespace Eigen {

template <>
struct NumTraits<hypcomm::Rational> : GenericNumTraits<hypcomm::Rational> {
  using Real = hypcomm::Rational;
  using NonInteger = hypcomm::Rational;
  using Nested = hypcomm::Rational;
  using Literal = hypcomm::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
