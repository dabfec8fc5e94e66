#pragma once

#include <set>
#include <vector>

#include "hypcomm/arith.hpp"
#include "hypcomm/forms.hpp"

namespace hypcomm {

using PlaceSet = std::set<Place>;

/// Hilbert symbol (a, b)_v in {+1, -1}: +1 iff z^2 = a x^2 + b y^2 has a
/// nontrivial solution over the completion at v.  Throws on zero input.
int hilbert(const Rational& a, const Rational& b, const Place& v);
int hilbert(const SquareClass& a, const SquareClass& b, const Place& v);

/// Product of (a_i, a_j)_v over i < j.
int hasse_witt(const DiagonalForm& f, const Place& v);

/// {inf, 2} together with every odd prime dividing a numerator or denominator.
/// Outside this set the Hasse-Witt invariant is +1.
PlaceSet relevant_places(const DiagonalForm& f);

/// Finite places dividing n, plus 2 and inf.
PlaceSet places_for(const Integer& n);

/// Complete classification datum of a rational quadratic form.
struct InvariantProfile {
  int rank = 0;
  Signature signature;
  SquareClass discriminant = SquareClass::one();
  /// Places v with epsilon_v = -1.
  PlaceSet negative_places;

  int epsilon(const Place& v) const { return negative_places.count(v) ? -1 : 1; }

  friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

/// Targets handed to the realization routines carry the same data; nothing
/// about them is assumed consistent.
using TargetProfile = InvariantProfile;

InvariantProfile profile(const DiagonalForm& f);

}  // namespace hypcomm
