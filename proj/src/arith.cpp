#include "hypcomm/arith.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "hypcomm/error.hpp"

namespace hypcomm {

namespace {

constexpr unsigned long kTrialBound = 1UL << 16;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> sieve(kTrialBound + 1, true);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialBound; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialBound; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

Integer powm(const Integer& base, const Integer& exp, const Integer& mod) {
  Integer out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

bool miller_rabin(const Integer& n) {
  // First 13 primes as bases: deterministic below 3.317e24.
  static constexpr std::array<unsigned long, 13> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (unsigned long a : bases) {
    Integer x = powm(Integer(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant; n is an odd composite with no prime factor below the trial bound.
Integer pollard_rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    auto step = [&](const Integer& x) { return Integer((x * x + c) % n); };
    Integer x = 2, y = 2, g = 1;
    while (g == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (g != n) return g;
  }
}

void split_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const Integer d = pollard_rho(n);
  split_into(d, out);
  split_into(Integer(n / d), out);
}

}  // namespace

std::vector<Integer> Factorization::primes() const {
  std::vector<Integer> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n <= kTrialBound) {
    const auto& ps = small_primes();
    return std::binary_search(ps.begin(), ps.end(), n.get_ui());
  }
  for (unsigned long p : small_primes()) {
    if (Integer(p) * p > n) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static const Integer deterministic_limit("3317044064679887385961981", 10);
  if (n < deterministic_limit) return miller_rabin(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Factorization factor(const Integer& n) {
  if (n == 0) throw PreconditionError("factor: zero has no factorization");
  Factorization out;
  out.sign = sgn(n);
  Integer m = abs(n);
  for (unsigned long p : small_primes()) {
    if (Integer(p) * p > m) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({Integer(p), e});
  }
  if (m > 1) {
    std::map<Integer, unsigned> rest;
    split_into(m, rest);
    for (const auto& [p, e] : rest) out.factors.push_back({p, e});
  }
  return out;
}

unsigned valuation(Integer n, const Integer& p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  unsigned v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

SquareClass::SquareClass(const Integer& value) {
  const Factorization f = factor(value);
  rep_ = f.sign;
  for (const auto& [p, e] : f.factors)
    if (e % 2 == 1) rep_ *= p;
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
  Integer g;
  mpz_gcd(g.get_mpz_t(), rep_.get_mpz_t(), other.rep_.get_mpz_t());
  // Both squarefree: dividing out gcd^2 from the product leaves a squarefree integer.
  Integer out = (rep_ / g) * (other.rep_ / g);
  return SquareClass(std::move(out), Trusted{});
}

SquareClass square_class(const Rational& r) {
  if (r.is_zero()) throw PreconditionError("square_class: zero has no square class");
  // num/den and num*den differ by den^2.
  return SquareClass(Integer(r.numerator() * r.denominator()));
}

int legendre(const Integer& a, const Integer& p) {
  if (p == 2) throw PreconditionError("legendre: p must be odd");
  if (!is_prime(p)) throw PreconditionError("legendre: " + p.get_str() + " is not prime");
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw PreconditionError("place: " + p.get_str() + " is not prime");
  return Place(p);
}

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  std::size_t pos = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError("place must be 'inf' or a prime", pos);
    ++pos;
  }
  if (text.empty()) throw ParseError("empty place", 0);
  return prime(Integer(std::string(text), 10));
}

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  const int c = cmp(a.prime_, b.prime_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Place unchecked_prime_place(Integer p) { return Place(std::move(p)); }

bool is_local_square(const Rational& r, const Place& v) {
  if (r.is_zero()) throw PreconditionError("is_local_square: zero");
  if (v.is_infinite()) return r.sign() > 0;
  const Integer& p = v.p();
  Integer num = r.numerator();
  Integer den = r.denominator();
  const unsigned vn = valuation(num, p);
  const unsigned vd = valuation(den, p);
  if ((vn + vd) % 2 != 0) return false;
  Integer pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), vn);
  num /= pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), vd);
  den /= pk;
  // num/den ≡ num*den modulo squares of units.
  const Integer unit = num * den;
  if (p == 2) {
    Integer residue;
    mpz_fdiv_r_ui(residue.get_mpz_t(), unit.get_mpz_t(), 8);
    return residue == 1;
  }
  return mpz_legendre(unit.get_mpz_t(), p.get_mpz_t()) == 1;
}

}  // namespace hypcomm
