#include <doctest.h>

#include <random>

#include "hypcomm/equivalence.hpp"
#include "hypcomm/error.hpp"
#include "hypcomm/local_invariants.hpp"
#include "oracles.hpp"

using namespace hypcomm;

namespace {

Place P(long p) { return Place::prime(Integer(p)); }

}  // namespace

TEST_CASE("hilbert symbol: classical values") {
  CHECK(hilbert(Rational(-1), Rational(-1), Place::infinity()) == -1);
  CHECK(hilbert(Rational(-1), Rational(-1), P(2)) == -1);
  CHECK(hilbert(Rational(-1), Rational(-1), P(3)) == 1);
  CHECK(hilbert(Rational(2), Rational(3), P(3)) == -1);
  CHECK(hilbert(Rational(2), Rational(5), P(2)) == -1);
  CHECK(hilbert(Rational(3), Rational(3), P(3)) == -1);
  CHECK(hilbert(Rational(5), Rational(-5), P(5)) == 1);
  CHECK_THROWS_AS(hilbert(Rational(0), Rational(1), P(3)), PreconditionError);
}

TEST_CASE("hilbert symbol agrees with the conic oracle") {
  const std::vector<Place> places{Place::infinity(), P(2), P(3), P(5), P(7), P(11), P(13)};
  for (long a = -15; a <= 15; ++a)
    for (long b = -15; b <= 15; ++b) {
      if (a == 0 || b == 0) continue;
      for (const auto& v : places) {
        const int expected = oracle::hilbert(Rational(a), Rational(b), v);
        CHECK(hilbert(Rational(a), Rational(b), v) == expected);
      }
    }
}

TEST_CASE("hilbert symbol: product formula and bimultiplicativity") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> pick(-200, 200);
  for (int trial = 0; trial < 300; ++trial) {
    long a = 0, b = 0, c = 0;
    while (a == 0) a = pick(rng);
    while (b == 0) b = pick(rng);
    while (c == 0) c = pick(rng);
    PlaceSet places = places_for(Integer(a * b * c));
    int product = 1;
    for (const auto& v : places) {
      product *= hilbert(Rational(a), Rational(b), v);
      CHECK(hilbert(Rational(a), Rational(b * c), v) ==
            hilbert(Rational(a), Rational(b), v) * hilbert(Rational(a), Rational(c), v));
      CHECK(hilbert(Rational(a), Rational(b), v) == hilbert(Rational(b), Rational(a), v));
      CHECK(hilbert(Rational(a), Rational(-a), v) == 1);
    }
    CHECK(product == 1);
  }
}

TEST_CASE("places_for and relevant_places") {
  const PlaceSet s = places_for(Integer(-45));
  CHECK(s == PlaceSet{P(2), P(3), P(5), Place::infinity()});
  const DiagonalForm f{Rational(Integer(7), Integer(3)), Rational(-1), Rational(10)};
  CHECK(relevant_places(f) == PlaceSet{P(2), P(3), P(5), P(7), Place::infinity()});
}

TEST_CASE("profile matches oracle Hasse-Witt on random forms") {
  std::mt19937_64 rng(3);
  const std::vector<oracle::i64> primes{2, 3, 5, 7};
  for (int trial = 0; trial < 150; ++trial) {
    const DiagonalForm f = oracle::random_form(rng, 1 + trial % 6, primes, 1);
    const InvariantProfile p = profile(f);
    for (const long q : {2L, 3L, 5L, 7L, 11L})
      CHECK(p.epsilon(P(q)) == oracle::hasse_witt(f, P(q)));
    CHECK(p.epsilon(Place::infinity()) == oracle::hasse_witt(f, Place::infinity()));
    CHECK(p.negative_places.size() % 2 == 0);
  }
}

TEST_CASE("scaled profile agrees with profile of the scaled form") {
  std::mt19937_64 rng(5);
  const std::vector<oracle::i64> primes{2, 3, 5};
  for (int trial = 0; trial < 200; ++trial) {
    const DiagonalForm f = oracle::random_form(rng, 1 + trial % 7, primes, 1);
    for (const long c : {-1L, 2L, -3L, 5L, 6L, -10L, 7L})
      CHECK(scaled_profile(SquareClass(Integer(c)), f) == profile(scale(Rational(c), f)));
  }
}
