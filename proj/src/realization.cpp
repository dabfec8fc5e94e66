#include "hypcomm/realization.hpp"

#include <algorithm>
#include <stdexcept>

#include "hypcomm/error.hpp"

namespace hypcomm {

namespace {

bool odd_pair_count(long s) { return ((s * (s - 1)) / 2) % 2 != 0; }

// Target left over after splitting <a> off `t`:  t = <a> + g with
// disc g = a d and eps(g) = eps(t) * (a, a d).
std::optional<TargetProfile> peel(const TargetProfile& t, const Integer& a) {
  TargetProfile g;
  g.rank = t.rank - 1;
  g.signature = t.signature;
  if (sgn(a) > 0) {
    if (g.signature.positive < 1) return std::nullopt;
    --g.signature.positive;
  } else {
    if (g.signature.negative < 1) return std::nullopt;
    --g.signature.negative;
  }
  const SquareClass ac(a);
  g.discriminant = t.discriminant * ac;
  PlaceSet places = t.negative_places;
  places.merge(places_for(a));
  places.merge(places_for(t.discriminant.representative()));
  for (const auto& v : places) {
    const int eps = t.epsilon(v) * hilbert(ac, g.discriminant, v);
    if (eps == -1) g.negative_places.insert(v);
  }
  return g;
}

std::string describe(const std::vector<int>& violated) {
  std::string out;
  for (int c : violated) out += (out.empty() ? "" : ",") + std::to_string(c);
  return out;
}

}  // namespace

Feasibility serre_feasible(const TargetProfile& target) {
  Feasibility out;
  auto violate = [&](int c) {
    out.feasible = false;
    out.violated.push_back(c);
  };
  const int n = target.rank;
  const int r = target.signature.positive;
  const int s = target.signature.negative;

  if (target.negative_places.size() % 2 != 0) violate(1);

  bool cond2 = true;
  if (n == 1 && !target.negative_places.empty()) cond2 = false;
  if (n == 2) {
    const Rational minus_d(Integer(-target.discriminant.representative()));
    for (const auto& v : target.negative_places)
      if (is_local_square(minus_d, v)) cond2 = false;
  }
  if (!cond2) violate(2);

  if (n < 1 || r < 0 || s < 0 || n != r + s) violate(3);

  const int expected_sign = (s % 2 == 0) ? 1 : -1;
  if (target.discriminant.sign() != expected_sign) violate(4);

  const bool inf_negative = target.negative_places.count(Place::infinity()) > 0;
  if (inf_negative != odd_pair_count(s)) violate(5);

  return out;
}

DiagonalForm realize(const TargetProfile& target, unsigned long widen_limit) {
  const Feasibility feasibility = serre_feasible(target);
  if (!feasibility.feasible)
    throw PreconditionError("target invariants are not realizable: violates condition(s) " +
                            describe(feasibility.violated));

  std::vector<Integer> coeffs;
  TargetProfile current = target;
  while (current.rank > 1) {
    std::vector<Integer> support{Integer(2)};
    for (const auto& v : places_for(current.discriminant.representative()))
      if (v.is_finite() && v.p() != 2) support.push_back(v.p());
    for (const auto& v : current.negative_places)
      if (v.is_finite() && std::find(support.begin(), support.end(), v.p()) == support.end()) support.push_back(v.p());
    std::sort(support.begin(), support.end());

    std::optional<TargetProfile> residual;
    auto accept = [&](const Integer& a) {
      residual = peel(current, a);
      return residual && serre_feasible(*residual).feasible;
    };
    const auto a = find_squarefree(support, widen_limit, accept);
    if (!a) throw SearchExhaustedError("realize: no coefficient found with auxiliary primes up to " +
                                       std::to_string(widen_limit));
    coeffs.push_back(*a);
    current = *residual;
  }
  coeffs.push_back(current.discriminant.representative());

  std::sort(coeffs.begin(), coeffs.end(), [](const Integer& x, const Integer& y) {
    const int c = mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
    return c != 0 ? c < 0 : x < y;
  });
  std::vector<Rational> rational_coeffs(coeffs.begin(), coeffs.end());
  DiagonalForm result(std::move(rational_coeffs));
  if (!(profile(result) == target)) throw std::logic_error("realize: recomputed profile differs from target");
  return result;
}

TargetProfile complement_target(const DiagonalForm& q) {
  const InvariantProfile p = profile(q);
  const SquareClass minus_d = SquareClass(Integer(-1)) * p.discriminant;
  const SquareClass minus_one(Integer(-1));
  TargetProfile t;
  t.rank = p.rank - 2;
  t.signature = {p.signature.positive - 1, p.signature.negative - 1};
  t.discriminant = minus_d;
  PlaceSet places = p.negative_places;
  places.merge(places_for(minus_d.representative()));
  for (const auto& v : places)
    if (p.epsilon(v) * hilbert(minus_one, minus_d, v) == -1) t.negative_places.insert(v);
  return t;
}

ComplementCertificate check_complement(const DiagonalForm& q, const DiagonalForm& complement) {
  const DiagonalForm extended = direct_sum(complement, hyperbolic_plane());
  ComplementCertificate cert{complement, profile(q), complement_target(q), {}, profile(complement),
                             profile(extended), false, true};
  cert.target_feasibility = serre_feasible(cert.target);
  cert.profiles_match = cert.extended_profile == cert.source && cert.complement_profile == cert.target;

  const SquareClass minus_one(Integer(-1));
  const SquareClass d = cert.complement_profile.discriminant;
  for (const auto& v : relevant_places(extended))
    if (hasse_witt(extended, v) != hasse_witt(complement, v) * hilbert(minus_one, d, v)) cert.telescoping_holds = false;
  return cert;
}

ComplementCertificate definite_complement(const DiagonalForm& q) {
  const Signature sig = signature(q);
  if (sig.negative != 1)
    throw SignatureError("definite_complement needs signature (m,1); got (" + std::to_string(sig.positive) + "," +
                         std::to_string(sig.negative) + ")");
  if (sig.positive < 6)
    throw PreconditionError("definite_complement needs m >= 6; got m = " + std::to_string(sig.positive));
  const TargetProfile target = complement_target(q);
  return check_complement(q, realize(target));
}

}  // namespace hypcomm
