#pragma once

#include <json.hpp>

#include "hypcomm/bieberbach.hpp"
#include "hypcomm/equivalence.hpp"
#include "hypcomm/realization.hpp"

namespace hypcomm {

/// Key order is preserved so output is byte-stable.
using Json = nlohmann::ordered_json;

/// Rationals are written as strings; numbers and strings are read.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const VectorQ& v);
VectorQ vector_from_json(const Json& j);

/// Rows as arrays.
Json matrix_rows_to_json(const MatrixQ& m);
/// Accepts nested rows, or a flat row-major array when `columns` is given.
MatrixQ matrix_from_json(const Json& j, Eigen::Index columns = -1);

Json to_json(const Place& v);
Json to_json(const PlaceSet& places);

/// {"rank", "sig": [r, s], "disc", "neg_places"}
Json to_json(const InvariantProfile& p);
InvariantProfile profile_from_json(const Json& j);

Json to_json(const Obstruction& o);
/// {"equivalent", "witness", "obstruction"}
Json to_json(const ProjectiveVerdict& v);

Json to_json(const Feasibility& f);
Json to_json(const ComplementCertificate& c);

/// {"A": row-major, "v"}
Json to_json(const AffineIsometry& g);
AffineIsometry isometry_from_json(const Json& j, int dimension);

/// {"dimension", "generators", "seed_lattice"}
Json to_json(const CrystalPresentation& p);
CrystalPresentation presentation_from_json(const Json& j);

Json to_json(const TorsionReport& r);
Json to_json(const TopologyFlags& f);

/// Closure and every predicate, as reported by `flat check`.
Json flat_report(const CrystalPresentation& p, ClosureOptions options = {});

}  // namespace hypcomm
