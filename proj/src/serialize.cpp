#include "hypcomm/serialize.hpp"

#include "hypcomm/error.hpp"

namespace hypcomm {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  return j.at(key);
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational as a string or integer, got " + j.dump(), 0);
}

Json to_json(const VectorQ& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

VectorQ vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump(), 0);
  VectorQ v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
  return v;
}

Json matrix_rows_to_json(const MatrixQ& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(VectorQ(m.row(i).transpose())));
  return out;
}

MatrixQ matrix_from_json(const Json& j, Eigen::Index columns) {
  if (!j.is_array()) throw ParseError("expected a matrix, got " + j.dump(), 0);
  if (j.empty()) return MatrixQ(0, columns < 0 ? 0 : columns);
  if (j.front().is_array()) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    if (columns >= 0 && cols != columns)
      throw RankMismatchError("matrix has " + std::to_string(cols) + " columns, expected " + std::to_string(columns));
    MatrixQ m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const VectorQ row = vector_from_json(j[static_cast<std::size_t>(i)]);
      if (row.size() != cols) throw ParseError("ragged matrix rows", 0);
      m.row(i) = row.transpose();
    }
    return m;
  }
  if (columns <= 0) throw ParseError("flat matrix needs a known column count", 0);
  const VectorQ flat = vector_from_json(j);
  if (flat.size() % columns != 0)
    throw RankMismatchError("flat matrix of length " + std::to_string(flat.size()) + " is not a multiple of " +
                            std::to_string(columns));
  const Eigen::Index rows = flat.size() / columns;
  MatrixQ m(rows, columns);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < columns; ++k) m(i, k) = flat(i * columns + k);
  return m;
}

Json to_json(const Place& v) { return v.to_string(); }

Json to_json(const PlaceSet& places) {
  Json out = Json::array();
  for (const auto& v : places) out.push_back(to_json(v));
  return out;
}

Json to_json(const InvariantProfile& p) {
  return Json{{"rank", p.rank},
              {"sig", Json::array({p.signature.positive, p.signature.negative})},
              {"disc", p.discriminant.to_string()},
              {"neg_places", to_json(p.negative_places)}};
}

InvariantProfile profile_from_json(const Json& j) {
  InvariantProfile p;
  p.rank = field(j, "rank").get<int>();
  const Json& sig = field(j, "sig");
  if (!sig.is_array() || sig.size() != 2) throw ParseError("sig must be [r, s]", 0);
  p.signature = {sig[0].get<int>(), sig[1].get<int>()};
  const Json& disc = field(j, "disc");
  p.discriminant = SquareClass(disc.is_string() ? Integer(disc.get<std::string>()) : Integer(disc.get<long>()));
  for (const auto& v : field(j, "neg_places")) p.negative_places.insert(Place::parse(v.get<std::string>()));
  return p;
}

Json to_json(const Obstruction& o) {
  return Json{{"invariant", o.invariant},
              {"place", o.place ? to_json(*o.place) : Json(nullptr)},
              {"mismatch_places", to_json(o.mismatch_places)}};
}

Json to_json(const ProjectiveVerdict& v) {
  return Json{{"equivalent", v.equivalent},
              {"witness", v.witness ? Json(v.witness->to_string()) : Json(nullptr)},
              {"obstruction", v.obstruction ? to_json(*v.obstruction) : Json(nullptr)}};
}

Json to_json(const Feasibility& f) { return Json{{"feasible", f.feasible}, {"violated", f.violated}}; }

Json to_json(const ComplementCertificate& c) {
  return Json{{"complement", c.complement.to_string()},
              {"target", to_json(c.target)},
              {"target_feasibility", to_json(c.target_feasibility)},
              {"profiles", Json{{"source", to_json(c.source)},
                                {"complement", to_json(c.complement_profile)},
                                {"extended", to_json(c.extended_profile)}}},
              {"profiles_match", c.profiles_match},
              {"telescoping_holds", c.telescoping_holds}};
}

Json to_json(const AffineIsometry& g) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < g.linear.rows(); ++i)
    for (Eigen::Index k = 0; k < g.linear.cols(); ++k) a.push_back(to_json(g.linear(i, k)));
  return Json{{"A", a}, {"v", to_json(g.translation)}};
}

AffineIsometry isometry_from_json(const Json& j, int dimension) {
  AffineIsometry g{matrix_from_json(field(j, "A"), dimension), vector_from_json(field(j, "v"))};
  if (g.linear.rows() != dimension || g.translation.size() != dimension)
    throw RankMismatchError("generator does not match dimension " + std::to_string(dimension));
  return g;
}

Json to_json(const CrystalPresentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back(to_json(g));
  return Json{{"dimension", p.dimension}, {"generators", gens}, {"seed_lattice", matrix_rows_to_json(p.seed_lattice)}};
}

CrystalPresentation presentation_from_json(const Json& j) {
  CrystalPresentation p;
  p.dimension = field(j, "dimension").get<int>();
  if (p.dimension < 1) throw PreconditionError("dimension must be positive");
  for (const auto& g : field(j, "generators")) p.generators.push_back(isometry_from_json(g, p.dimension));
  p.seed_lattice = j.contains("seed_lattice") ? matrix_from_json(j.at("seed_lattice"), p.dimension)
                                              : MatrixQ(0, p.dimension);
  return p;
}

Json to_json(const TorsionReport& r) {
  Json witness(nullptr);
  if (r.witness) {
    witness = to_json(*r.witness);
    witness["fixed_point"] = to_json(*r.fixed_point);
  }
  return Json{{"torsion_free", r.torsion_free}, {"witness", witness}};
}

Json to_json(const TopologyFlags& f) {
  return Json{{"families", f.families},
              {"sw_nonvanishing_range", f.sw_nonvanishing_range ? Json(*f.sw_nonvanishing_range) : Json(nullptr)},
              {"spinc_obstructed", f.spinc_obstructed},
              {"citations", f.citations}};
}

Json flat_report(const CrystalPresentation& p, ClosureOptions options) {
  const GroupClosure c = closure(p, options);
  const TorsionReport torsion = is_torsion_free(c);
  const auto rank = elementary_abelian_rank(c);
  Json cosets = Json::array();
  for (const auto& g : c.cosets) cosets.push_back(to_json(g));
  return Json{{"dimension", c.dimension},
              {"holonomy_order", c.holonomy_order()},
              {"holonomy_rank", rank ? Json(*rank) : Json(nullptr)},
              {"lattice", matrix_rows_to_json(c.lattice)},
              {"cosets", cosets},
              {"torsion_free", torsion.torsion_free},
              {"torsion_witness", to_json(torsion)["witness"]},
              {"orientable", is_orientable(c)},
              {"diagonal_holonomy", is_diagonal_holonomy(c)},
              {"ghw", is_ghw(c)},
              {"flags", to_json(topology_flags(c))}};
}

}  // namespace hypcomm
