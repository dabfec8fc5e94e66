#pragma once

#include <optional>
#include <string>

#include "hypcomm/local_invariants.hpp"
#include "hypcomm/squarefree_search.hpp"

namespace hypcomm {

/// Why two forms are inequivalent.
struct Obstruction {
  /// "rank", "signature", "discriminant" or "hasse_witt".
  std::string invariant;
  /// Reported place: smallest odd prime among the mismatches, then 2, then inf.
  std::optional<Place> place;
  /// Every place at which the compared local data disagree.
  PlaceSet mismatch_places;

  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

struct ProjectiveVerdict {
  bool equivalent = false;
  /// Class c with q1 ≅ c * q2; present iff equivalent.
  std::optional<SquareClass> witness;
  /// Present iff not equivalent.
  std::optional<Obstruction> obstruction;
};

/// The place reported for a mismatch set (see Obstruction::place).
Place preferred_place(const PlaceSet& places);

/// First disagreement between two profiles, or nothing when they are equal.
std::optional<Obstruction> compare_profiles(const InvariantProfile& expected, const InvariantProfile& actual);

/// Rational equivalence decided by equality of invariant profiles.
bool rationally_equivalent(const DiagonalForm& q1, const DiagonalForm& q2);

/// Same decision with witness 1 or an obstruction.
ProjectiveVerdict rational_verdict(const DiagonalForm& q1, const DiagonalForm& q2);

/// profile(scale(c, q)) through the closed-form covariance of the invariants.
InvariantProfile scaled_profile(const SquareClass& c, const DiagonalForm& q);

/// Decides whether q1 ≅ c * q2 for some nonzero rational c.
/// Throws RankMismatchError when ranks differ, and SearchExhaustedError if the
/// local conditions are solvable but no witness turns up below `widen_limit`.
ProjectiveVerdict projectively_equivalent(const DiagonalForm& q1, const DiagonalForm& q2,
                                          unsigned long widen_limit = kDefaultWidenLimit);

/// Commensurability of the cusped arithmetic hyperbolic manifolds defined by
/// two forms of signature (m, 1).  Throws SignatureError otherwise.
bool commensurable(const DiagonalForm& q1, const DiagonalForm& q2);

}  // namespace hypcomm
