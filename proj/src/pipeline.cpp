#include "hypcomm/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "hypcomm/error.hpp"

namespace hypcomm {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void require_dimension(int m) {
  if (m < 6) throw PreconditionError("cusp witnesses need m >= 6; got m = " + std::to_string(m));
}

FlatChoice ghw_choice(int dimension, std::uint64_t bound, bool circle) {
  const GhwSearchResult r = ghw_search(dimension, bound);
  if (!r.presentation)
    throw SearchExhaustedError("no GHW witness found within bound " + std::to_string(bound) + " in dimension " +
                               std::to_string(dimension) + " (" + std::to_string(r.examined) +
                               " candidates examined); this is not a proof of non-existence");
  const std::string family = "ghw(" + std::to_string(dimension) + ")";
  if (!circle) return {*r.presentation, family};
  return {product_with_circle(*r.presentation), family + " x S^1"};
}

Json citation(const std::string& key, const std::string& use) { return Json{{"key", key}, {"use", use}}; }

std::string path_of(const std::string& pointer) {
  std::string out = pointer.empty() ? pointer : pointer.substr(1);
  std::replace(out.begin(), out.end(), '/', '.');
  return out;
}

}  // namespace

Property parse_property(const std::string& text) {
  const std::string t = lowercase(text);
  if (t == "sw") return Property::SW;
  if (t == "spinc") return Property::SpinC;
  throw ParseError("property must be 'sw' or 'spinc', got '" + text + "'", 0);
}

std::string to_string(Property p) { return p == Property::SW ? "sw" : "spinc"; }

FlatChoice select_flat(int m, Property property, std::uint64_t bound) {
  require_dimension(m);
  const bool even = m % 2 == 0;
  if (property == Property::SW) {
    const int n = even ? (m - 2) / 2 : (m - 3) / 2;
    const std::string family = "im-kim(" + std::to_string(n) + ")";
    if (even) return {im_kim(n), family};
    return {product_with_circle(im_kim(n)), family + " x S^1"};
  }
  return even ? ghw_choice(m - 1, bound, false) : ghw_choice(m - 2, bound, true);
}

CommensurabilityCertificate assemble(int m, const DiagonalForm& q, Property property, const FlatChoice& flat,
                                     const DiagonalForm& complement) {
  require_dimension(m);
  const Signature sig = signature(q);
  if (sig != Signature{m, 1})
    throw SignatureError("form must have signature (" + std::to_string(m) + ",1); got (" +
                         std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")");
  if (flat.presentation.dimension != m - 1)
    throw RankMismatchError("flat manifold has dimension " + std::to_string(flat.presentation.dimension) +
                            ", expected " + std::to_string(m - 1));
  if (complement.rank() != m - 1)
    throw RankMismatchError("complement has rank " + std::to_string(complement.rank()) + ", expected " +
                            std::to_string(m - 1));

  const GroupClosure closed = closure(flat.presentation);
  FlatChecks checks;
  checks.holonomy_order = closed.holonomy_order();
  checks.holonomy_rank = elementary_abelian_rank(closed);
  checks.lattice = closed.lattice;
  checks.torsion = is_torsion_free(closed);
  checks.orientable = is_orientable(closed);
  checks.diagonal_holonomy = is_diagonal_holonomy(closed);
  checks.ghw = is_ghw(closed);
  checks.preserves_form = preserves_form(flat.presentation, complement);
  checks.flags = topology_flags(closed);

  return CommensurabilityCertificate{m,
                                     q,
                                     property,
                                     flat,
                                     std::move(checks),
                                     check_complement(q, complement),
                                     rational_verdict(direct_sum(complement, hyperbolic_plane()), q)};
}

CommensurabilityCertificate cusp_witness(int m, const DiagonalForm& q, Property property,
                                         const WitnessOptions& options) {
  require_dimension(m);
  const Signature sig = signature(q);
  if (sig != Signature{m, 1})
    throw SignatureError("form must have signature (" + std::to_string(m) + ",1); got (" +
                         std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")");
  const DiagonalForm complement = options.complement ? *options.complement : definite_complement(q).complement;
  return assemble(m, q, property, select_flat(m, property, options.ghw_bound), complement);
}

std::vector<std::string> requirement_failures(const CommensurabilityCertificate& c) {
  std::vector<std::string> out;
  const FlatChecks& k = c.checks;
  if (!k.torsion.torsion_free) out.push_back("flat.checks.torsion_free: presentation has torsion");
  if (!k.orientable) out.push_back("flat.checks.orientable: holonomy contains a determinant -1 element");
  if (!k.preserves_form) out.push_back("flat.checks.preserves_form: holonomy does not preserve the complement");
  const auto& families = k.flags.families;
  if (std::find(families.begin(), families.end(), c.flat.family) == families.end())
    out.push_back("flat.family: '" + c.flat.family + "' is not recognized for the presentation");
  if (c.property == Property::SW && !k.flags.sw_nonvanishing_range)
    out.push_back("flat.flags.sw_nonvanishing_range: no Stiefel-Whitney family recognized");
  if (c.property == Property::SpinC && !k.flags.spinc_obstructed)
    out.push_back("flat.flags.spinc_obstructed: no spin^c obstruction recognized");
  if (signature(c.complement.complement) != Signature{c.m - 1, 0})
    out.push_back("complement.form: not positive definite");
  if (!c.complement.profiles_match) out.push_back("complement.profiles_match: complement + <1,-1> differs from q");
  if (!c.equivalence.equivalent) out.push_back("equivalence.equivalent: complement + <1,-1> is not equivalent to q");
  return out;
}

Json to_json(const CommensurabilityCertificate& c) {
  const FlatChecks& k = c.checks;
  Json checks{{"holonomy_order", k.holonomy_order},
              {"holonomy_rank", k.holonomy_rank ? Json(*k.holonomy_rank) : Json(nullptr)},
              {"lattice", matrix_rows_to_json(k.lattice)},
              {"torsion_free", k.torsion.torsion_free},
              {"torsion_witness", to_json(k.torsion)["witness"]},
              {"orientable", k.orientable},
              {"diagonal_holonomy", k.diagonal_holonomy},
              {"ghw", k.ghw},
              {"preserves_form", k.preserves_form}};

  Json citations = Json::array({
      citation("LRcusps", "every closed flat (m-1)-manifold is a cusp cross-section of an arithmetic "
                          "hyperbolic m-orbifold built from a form f + <1,-1> preserved by its holonomy"),
      citation("McR", "passage to a manifold cover keeping the cusp cross-section"),
      citation("MA", "commensurability classes correspond to projective equivalence classes of forms"),
  });
  for (const auto& key : k.flags.citations) {
    if (key == "ImKim") citations.push_back(citation(key, "w_2j != 0 for 0 <= 2j <= n on Im-Kim manifolds"));
    if (key == "RS") citations.push_back(citation(key, "generalized Hantzsche-Wendt manifolds"));
    if (key == "LPS") citations.push_back(citation(key, "GHW manifolds of dimension > 3 admit no spin^c structure"));
  }

  const DiagonalForm extended = direct_sum(c.complement.complement, hyperbolic_plane());
  Json verdict = to_json(c.equivalence);
  Json equivalence{{"statement", "rational equivalence of complement + <1,-1> and q"}};
  for (auto& [key, value] : verdict.items()) equivalence[key] = value;
  equivalence["extended_form"] = extended.to_string();
  equivalence["note"] =
      "equal invariants give rational equivalence, which is stronger than the projective equivalence "
      "needed for commensurability";

  return Json{
      {"schema", kCertificateSchema},
      {"input", Json{{"m", c.m}, {"form", c.q.to_string()}, {"property", to_string(c.property)}}},
      {"flat", Json{{"family", c.flat.family},
                    {"presentation", to_json(c.flat.presentation)},
                    {"checks", checks},
                    {"flags", to_json(k.flags)}}},
      {"complement", Json{{"form", c.complement.complement.to_string()},
                          {"target", to_json(c.complement.target)},
                          {"target_feasibility", to_json(c.complement.target_feasibility)},
                          {"profiles_match", c.complement.profiles_match},
                          {"telescoping_holds", c.complement.telescoping_holds}}},
      {"invariants", Json{{"q", to_json(c.complement.source)},
                          {"complement", to_json(c.complement.complement_profile)},
                          {"extended", to_json(c.complement.extended_profile)}}},
      {"equivalence", equivalence},
      {"citations", citations},
      {"requirements_failed", requirement_failures(c)},
  };
}

VerificationResult verify_certificate(const Json& certificate) {
  VerificationResult result;
  std::optional<CommensurabilityCertificate> recomputed;
  try {
    if (!certificate.is_object()) throw ParseError("certificate must be a JSON object", 0);
    const Json& schema = certificate.at("schema");
    if (schema != kCertificateSchema)
      throw ParseError("unsupported schema " + schema.dump() + ", expected " + std::to_string(kCertificateSchema), 0);
    const Json& input = certificate.at("input");
    const int m = input.at("m").get<int>();
    const DiagonalForm q = DiagonalForm::parse(input.at("form").get<std::string>());
    const Property property = parse_property(input.at("property").get<std::string>());
    const Json& flat = certificate.at("flat");
    const FlatChoice choice{presentation_from_json(flat.at("presentation")), flat.at("family").get<std::string>()};
    const DiagonalForm complement = DiagonalForm::parse(certificate.at("complement").at("form").get<std::string>());
    recomputed = assemble(m, q, property, choice, complement);
  } catch (const Error& e) {
    result.mismatches.push_back(std::string("input: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    result.mismatches.push_back(std::string("input: ") + e.what());
  }
  if (!recomputed) return result;

  const Json fresh = to_json(*recomputed).flatten();
  const Json stored = certificate.flatten();
  std::set<std::string> paths;
  for (const auto& [key, value] : fresh.items()) paths.insert(key);
  for (const auto& [key, value] : stored.items()) paths.insert(key);
  for (const auto& path : paths) {
    const bool in_fresh = fresh.contains(path);
    const bool in_stored = stored.contains(path);
    if (in_fresh && in_stored && fresh.at(path) == stored.at(path)) continue;
    result.mismatches.push_back(path_of(path) + ": stored " + (in_stored ? stored.at(path).dump() : "(absent)") +
                                ", recomputed " + (in_fresh ? fresh.at(path).dump() : "(absent)"));
  }
  for (auto& failure : requirement_failures(*recomputed)) result.mismatches.push_back(std::move(failure));
  if (!recomputed->checks.torsion.torsion_free) result.torsion = recomputed->checks.torsion;
  result.verified = result.mismatches.empty();
  return result;
}

}  // namespace hypcomm
