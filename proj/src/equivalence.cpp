#include "hypcomm/equivalence.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "hypcomm/error.hpp"

namespace hypcomm {

namespace {

PlaceSet symmetric_difference(const PlaceSet& a, const PlaceSet& b) {
  PlaceSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// Places where the two classes differ locally.
PlaceSet class_mismatch_places(const SquareClass& a, const SquareClass& b) {
  const SquareClass ratio = a * b;
  PlaceSet out;
  for (const auto& v : places_for(ratio.representative()))
    if (!is_local_square(Rational(ratio.representative()), v)) out.insert(v);
  return out;
}

Obstruction make_obstruction(std::string invariant, PlaceSet places) {
  Obstruction o{std::move(invariant), std::nullopt, std::move(places)};
  if (!o.mismatch_places.empty()) o.place = preferred_place(o.mismatch_places);
  return o;
}

std::vector<Integer> finite_primes(const PlaceSet& places) {
  std::vector<Integer> out;
  for (const auto& v : places)
    if (v.is_finite()) out.push_back(v.p());
  return out;
}

}  // namespace

Place preferred_place(const PlaceSet& places) {
  if (places.empty()) throw std::logic_error("preferred_place: empty set");
  for (const auto& v : places)
    if (v.is_finite() && v.p() != 2) return v;
  const Place two = unchecked_prime_place(Integer(2));
  if (places.count(two)) return two;
  return *places.begin();
}

std::optional<Obstruction> compare_profiles(const InvariantProfile& expected, const InvariantProfile& actual) {
  if (expected.rank != actual.rank) return Obstruction{"rank", std::nullopt, {}};
  if (!(expected.signature == actual.signature)) return make_obstruction("signature", {Place::infinity()});
  if (!(expected.discriminant == actual.discriminant))
    return make_obstruction("discriminant", class_mismatch_places(expected.discriminant, actual.discriminant));
  if (expected.negative_places != actual.negative_places)
    return make_obstruction("hasse_witt", symmetric_difference(expected.negative_places, actual.negative_places));
  return std::nullopt;
}

bool rationally_equivalent(const DiagonalForm& q1, const DiagonalForm& q2) {
  return q1.rank() == q2.rank() && profile(q1) == profile(q2);
}

ProjectiveVerdict rational_verdict(const DiagonalForm& q1, const DiagonalForm& q2) {
  ProjectiveVerdict out;
  out.obstruction = compare_profiles(profile(q1), profile(q2));
  out.equivalent = !out.obstruction.has_value();
  if (out.equivalent) out.witness = SquareClass::one();
  return out;
}

InvariantProfile scaled_profile(const SquareClass& c, const DiagonalForm& q) {
  const InvariantProfile base = profile(q);
  const int n = base.rank;
  const bool odd_pairs = (static_cast<long>(n) * (n - 1) / 2) % 2 == 1;
  const bool odd_rank = n % 2 == 1;
  const SquareClass minus_one(Integer(-1));

  InvariantProfile out;
  out.rank = n;
  out.signature = c.sign() > 0 ? base.signature : base.signature.swapped();
  out.discriminant = odd_rank ? c * base.discriminant : base.discriminant;

  PlaceSet places = base.negative_places;
  places.merge(places_for(c.representative()));
  places.merge(places_for(base.discriminant.representative()));
  for (const auto& v : places) {
    int eps = base.epsilon(v);
    if (odd_pairs) eps *= hilbert(c, minus_one, v);
    if (n % 2 == 0) eps *= hilbert(c, base.discriminant, v);
    if (eps == -1) out.negative_places.insert(v);
  }
  return out;
}

ProjectiveVerdict projectively_equivalent(const DiagonalForm& q1, const DiagonalForm& q2, unsigned long widen_limit) {
  if (q1.rank() != q2.rank())
    throw RankMismatchError("projective equivalence needs equal ranks (got " + std::to_string(q1.rank()) + " and " +
                            std::to_string(q2.rank()) + ")");
  const InvariantProfile p1 = profile(q1);
  const InvariantProfile p2 = profile(q2);
  const int n = p1.rank;
  const bool positive_ok = p1.signature == p2.signature;
  const bool negative_ok = p1.signature == p2.signature.swapped();

  ProjectiveVerdict out;
  auto reject = [&](Obstruction o) {
    out.equivalent = false;
    out.obstruction = std::move(o);
    return out;
  };

  if (!positive_ok && !negative_ok) return reject(make_obstruction("signature", {Place::infinity()}));

  if (n % 2 == 1) {
    // disc(c q2) = c * disc(q2) forces the class of c.
    const SquareClass c = p1.discriminant * p2.discriminant;
    if ((c.sign() > 0 && !positive_ok) || (c.sign() < 0 && !negative_ok))
      return reject(make_obstruction("signature", {Place::infinity()}));
    const InvariantProfile scaled = scaled_profile(c, q2);
    if (auto o = compare_profiles(p1, scaled)) return reject(*o);
    out.equivalent = true;
    out.witness = c;
    return out;
  }

  if (!(p1.discriminant == p2.discriminant))
    return reject(make_obstruction("discriminant", class_mismatch_places(p1.discriminant, p2.discriminant)));

  // eps_v(c q2) = eps_v(q2) * (c, t)_v with t = (-1)^{n(n-1)/2} disc(q2)^{n-1}.
  const bool odd_pairs = (static_cast<long>(n) * (n - 1) / 2) % 2 == 1;
  const SquareClass t = odd_pairs ? SquareClass(Integer(-1)) * p2.discriminant : p2.discriminant;
  const PlaceSet mismatch = symmetric_difference(p1.negative_places, p2.negative_places);

  PlaceSet blocked;
  for (const auto& v : mismatch)
    if (is_local_square(Rational(t.representative()), v)) blocked.insert(v);
  if (!blocked.empty()) return reject(make_obstruction("hasse_witt", blocked));
  if (mismatch.size() % 2 != 0) return reject(make_obstruction("hasse_witt", mismatch));

  bool need_positive = false;
  bool need_negative = false;
  if (t.sign() < 0) (mismatch.count(Place::infinity()) ? need_negative : need_positive) = true;
  const bool sign_ok = need_positive ? positive_ok : (need_negative ? negative_ok : true);
  if (!sign_ok) return reject(make_obstruction("signature", {Place::infinity()}));

  PlaceSet support_places = p1.negative_places;
  support_places.merge(PlaceSet(p2.negative_places));
  support_places.merge(places_for(p1.discriminant.representative()));
  support_places.merge(relevant_places(q1));
  support_places.merge(relevant_places(q2));

  auto accept = [&](const Integer& c) {
    if ((sgn(c) > 0 && !positive_ok) || (sgn(c) < 0 && !negative_ok)) return false;
    return scaled_profile(SquareClass(c), q2) == p1;
  };
  const auto found = find_squarefree(finite_primes(support_places), widen_limit, accept);
  if (!found)
    throw SearchExhaustedError("local conditions admit a scalar but none was found with auxiliary primes up to " +
                               std::to_string(widen_limit));
  out.equivalent = true;
  out.witness = SquareClass(*found);
  return out;
}

bool commensurable(const DiagonalForm& q1, const DiagonalForm& q2) {
  const Signature s1 = signature(q1);
  const Signature s2 = signature(q2);
  if (s1.negative != 1 || s2.negative != 1 || s1.positive < 1 || s1 != s2)
    throw SignatureError("commensurability needs two forms of the same signature (m,1); got (" +
                         std::to_string(s1.positive) + "," + std::to_string(s1.negative) + ") and (" +
                         std::to_string(s2.positive) + "," + std::to_string(s2.negative) + ")");
  return projectively_equivalent(q1, q2).equivalent;
}

}  // namespace hypcomm
