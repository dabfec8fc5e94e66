#include "hypcomm/rational.hpp"

#include <cctype>

#include "hypcomm/error.hpp"

namespace hypcomm {

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw PreconditionError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

namespace {

// Parses an optionally signed run of decimal digits starting at `pos`.
Integer parse_integer(std::string_view text, std::size_t& pos, std::size_t offset) {
  const std::size_t start = pos;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == digits) throw ParseError("expected digits", offset + (pos == start ? start : pos));
  Integer value(std::string(text.substr(digits, pos - digits)), 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  Integer num = parse_integer(text, pos, 0);
  Integer den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::size_t den_pos = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
      throw ParseError("sign not allowed in denominator", pos);
    den = parse_integer(text, pos, 0);
    if (den == 0) throw ParseError("zero denominator", den_pos);
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
  return Rational(num, den);
}

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational Rational::abs() const {
  Rational out;
  out.value_ = ::abs(value_);
  return out;
}

Rational Rational::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  Rational out;
  out.value_ = 1 / value_;
  return out;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw PreconditionError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::size_t hash_value(const Rational& r) {
  return std::hash<std::string>{}(r.to_string());
}

}  // namespace hypcomm
