#pragma once

#include <vector>

#include "hypcomm/local_invariants.hpp"
#include "hypcomm/squarefree_search.hpp"

namespace hypcomm {

/// Outcome of the existence test for a form with prescribed invariants.
/// Condition numbers:
///   1  only finitely many -1 and an even number of them;
///   2  no -1 in rank 1, and in rank 2 none where d is -1 locally;
///   3  r, s >= 0 and n = r + s;
///   4  sign of d is (-1)^s;
///   5  epsilon at inf is (-1)^{s(s-1)/2}.
struct Feasibility {
  bool feasible = true;
  std::vector<int> violated;
};

Feasibility serre_feasible(const TargetProfile& target);

/// Diagonal form whose recomputed profile equals `target`.  Coefficients are
/// squarefree integers sorted by absolute value, negatives first on ties.
/// Throws PreconditionError listing the violated conditions when infeasible.
DiagonalForm realize(const TargetProfile& target, unsigned long widen_limit = kDefaultWidenLimit);

/// Everything recomputed while building q' for a form q of signature (m, 1).
struct ComplementCertificate {
  DiagonalForm complement;
  InvariantProfile source;
  TargetProfile target;
  Feasibility target_feasibility;
  InvariantProfile complement_profile;
  /// profile(complement + <1,-1>)
  InvariantProfile extended_profile;
  bool profiles_match = false;
  /// eps_v(q' + <1,-1>) == eps_v(q') * (-1, disc q')_v at every relevant place.
  bool telescoping_holds = false;
};

/// Invariants required of a positive definite q' of rank m-1 with
/// q' + <1,-1> rationally equivalent to q.
TargetProfile complement_target(const DiagonalForm& q);

/// Positive definite q' of rank m-1 with q' + <1,-1> ≅ q.  Requires signature
/// (m, 1) with m >= 6; throws SignatureError otherwise.
ComplementCertificate definite_complement(const DiagonalForm& q);

/// Recomputes the certificate fields for a caller-chosen complement.
ComplementCertificate check_complement(const DiagonalForm& q, const DiagonalForm& complement);

}  // namespace hypcomm
