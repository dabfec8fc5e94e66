#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypcomm/bieberbach.hpp"
#include "hypcomm/equivalence.hpp"
#include "hypcomm/realization.hpp"
#include "hypcomm/serialize.hpp"

namespace hypcomm {

enum class Property { SW, SpinC };

/// "sw" or "spinc" (case-insensitive).
Property parse_property(const std::string& text);
std::string to_string(Property p);

/// Flat (m-1)-manifold presentation used for the cusp cross-section.
struct FlatChoice {
  CrystalPresentation presentation;
  /// e.g. "im-kim(2)", "ghw(5) x S^1".
  std::string family;
};

/// SW: im_kim(n) with m = 2n+2, or its circle product when m = 2n+3.
/// SpinC: ghw_search(m-1) for even m, ghw_search(m-2) circled for odd m.
/// Throws PreconditionError for m < 6 and SearchExhaustedError when the
/// GHW search ends without a witness.
FlatChoice select_flat(int m, Property property, std::uint64_t bound = kDefaultGhwBound);

struct FlatChecks {
  std::size_t holonomy_order = 0;
  std::optional<int> holonomy_rank;
  MatrixQ lattice;
  TorsionReport torsion;
  bool orientable = false;
  bool diagonal_holonomy = false;
  bool ghw = false;
  /// preserves_form(flat, complement)
  bool preserves_form = false;
  TopologyFlags flags;
};

struct CommensurabilityCertificate {
  int m = 0;
  DiagonalForm q{Rational(1)};
  Property property = Property::SW;
  FlatChoice flat;
  FlatChecks checks;
  ComplementCertificate complement;
  /// q'' = complement + <1,-1> against q: rational equivalence, witness 1.
  ProjectiveVerdict equivalence;
};

/// Recomputes every derived field from the raw inputs.  Deterministic.
/// Throws SignatureError unless q has signature (m, 1), PreconditionError for m < 6.
CommensurabilityCertificate assemble(int m, const DiagonalForm& q, Property property, const FlatChoice& flat,
                                     const DiagonalForm& complement);

struct WitnessOptions {
  std::uint64_t ghw_bound = kDefaultGhwBound;
  /// Used instead of the realized complement when set.
  std::optional<DiagonalForm> complement;
};

CommensurabilityCertificate cusp_witness(int m, const DiagonalForm& q, Property property,
                                         const WitnessOptions& options = {});

/// Properties a certificate must have to witness the claim; empty when all hold.
std::vector<std::string> requirement_failures(const CommensurabilityCertificate& c);

inline constexpr int kCertificateSchema = 1;

Json to_json(const CommensurabilityCertificate& c);

struct VerificationResult {
  bool verified = false;
  /// "path: stored X, recomputed Y" or a failed requirement.
  std::vector<std::string> mismatches;
  /// Torsion found in the stored presentation, if any.
  std::optional<TorsionReport> torsion;
};

/// Reads the raw inputs from `certificate`, recomputes everything, and
/// compares field by field.  Never throws on malformed content; problems are
/// listed as mismatches.
VerificationResult verify_certificate(const Json& certificate);

}  // namespace hypcomm
