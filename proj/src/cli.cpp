#include "hypcomm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "hypcomm/bieberbach.hpp"
#include "hypcomm/equivalence.hpp"
#include "hypcomm/error.hpp"
#include "hypcomm/pipeline.hpp"
#include "hypcomm/realization.hpp"
#include "hypcomm/serialize.hpp"

namespace hypcomm::cli {

namespace {

enum Exit { kOk = 0, kPrecondition = 1, kMismatch = 2, kExhausted = 3 };

struct Output {
  std::ostream& out;
  bool pretty = false;

  void emit(const Json& j) const { out << (pretty ? j.dump(2) : j.dump()) << '\n'; }
};

// A "<a,b,...>" form, or a JSON Gram matrix "[[..],[..]]" diagonalized first.
struct FormInput {
  DiagonalForm form;
  std::optional<DiagonalForm> diagonalized_from_matrix;
};

FormInput parse_form_input(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("bad matrix JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    const DiagonalForm d = diagonalize(SymmetricForm(matrix_from_json(j))).form;
    return {d, d};
  }
  return {DiagonalForm::parse(text), std::nullopt};
}

DiagonalForm parse_form(const std::string& text) { return parse_form_input(text).form; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

PlaceSet parse_places(const std::string& text) {
  PlaceSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(Place::parse(item));
  return out;
}

Signature parse_signature(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("signature must be 'r,s'", text.size());
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError("signature must be 'r,s'", 0);
  }
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const SearchExhaustedError*>(&e)) return "search_exhausted";
  if (dynamic_cast<const DegenerateFormError*>(&e)) return "degenerate_form";
  if (dynamic_cast<const RankMismatchError*>(&e)) return "rank_mismatch";
  if (dynamic_cast<const SignatureError*>(&e)) return "signature";
  if (dynamic_cast<const NotCrystallographicError*>(&e)) return "not_crystallographic";
  return "precondition";
}

Json hilbert_table(const Rational& a, const Rational& b, const std::optional<std::string>& place) {
  Json out{{"a", to_json(a)}, {"b", to_json(b)}};
  if (place) {
    const Place v = Place::parse(*place);
    out["place"] = to_json(v);
    out["symbol"] = hilbert(a, b, v);
    return out;
  }
  PlaceSet places = places_for(a.numerator() * a.denominator() * b.numerator() * b.denominator());
  Json symbols = Json::object();
  for (const auto& v : places) symbols[v.to_string()] = hilbert(a, b, v);
  out["symbols"] = symbols;
  return out;
}

Json verification_json(const VerificationResult& r) {
  Json out{{"verified", r.verified}, {"mismatches", r.mismatches}};
  out["torsion_witness"] = r.torsion ? to_json(*r.torsion)["witness"] : Json(nullptr);
  return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rational quadratic forms, flat manifolds and commensurability certificates", "hypcomm"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indented output");
  app.fallthrough();

  std::string form_a, form_b;
  unsigned long widen = kDefaultWidenLimit;

  auto* invariants = app.add_subcommand("invariants", "Invariant profile of a form or Gram matrix");
  invariants->add_option("form", form_a, "\"<a1,...,an>\" or a JSON Gram matrix")->required();

  std::string hil_a, hil_b;
  std::optional<std::string> hil_place;
  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
  hil->add_option("a", hil_a)->required();
  hil->add_option("b", hil_b)->required();
  hil->add_option("--place", hil_place, "Prime or 'inf'; default: every relevant place");

  auto* equiv = app.add_subcommand("equiv", "Rational equivalence");
  equiv->add_option("q1", form_a)->required();
  equiv->add_option("q2", form_b)->required();

  auto* proj = app.add_subcommand("proj-equiv", "Projective equivalence q1 ~ c q2");
  proj->add_option("q1", form_a)->required();
  proj->add_option("q2", form_b)->required();
  proj->add_option("--widen", widen, "Largest auxiliary prime for the witness search")->capture_default_str();

  auto* comm = app.add_subcommand("commensurable", "Commensurability for signature (m,1) forms");
  comm->add_option("q1", form_a)->required();
  comm->add_option("q2", form_b)->required();

  int rank = 0;
  std::string sig_text, disc_text, neg_text;
  auto* real = app.add_subcommand("realize", "Diagonal form with prescribed invariants");
  real->add_option("--rank", rank)->required();
  real->add_option("--sig", sig_text, "r,s")->required();
  real->add_option("--disc", disc_text, "Squarefree class representative")->required();
  real->add_option("--neg-places", neg_text, "Comma-separated places with epsilon = -1");
  real->add_option("--widen", widen, "Largest auxiliary prime")->capture_default_str();

  auto* comp = app.add_subcommand("complement", "Positive definite q' with q' + <1,-1> = q");
  comp->add_option("form", form_a)->required();

  auto* flat = app.add_subcommand("flat", "Flat manifold tools");
  flat->require_subcommand(1);
  std::string family;
  int im_kim_n = 1;
  bool circle = false;
  auto* build = flat->add_subcommand("build", "Generator presentation of a known family");
  build->add_option("family", family)->required()->check(CLI::IsMember({"im-kim"}));
  build->add_option("--n", im_kim_n, "Im-Kim parameter; dimension 2n+1")->capture_default_str();
  build->add_flag("--circle", circle, "Product with a circle");

  std::string file;
  std::size_t max_holonomy = 0;
  auto* check = flat->add_subcommand("check", "Closure and every predicate of a presentation file");
  check->add_option("file", file)->required();
  check->add_option("--max-holonomy", max_holonomy, "Closure guard; 0 means 2^(dim+2)")->capture_default_str();

  int ghw_dim = 0;
  std::uint64_t bound = kDefaultGhwBound;
  auto* ghw = flat->add_subcommand("ghw-search", "Search for a generalized Hantzsche-Wendt presentation");
  ghw->add_option("--dim", ghw_dim)->required();
  ghw->add_option("--bound", bound, "Candidate budget")->capture_default_str();

  int m = 0;
  std::string property_text, out_path;
  std::optional<std::string> complement_text;
  auto* witness = app.add_subcommand("cusp-witness", "Build a commensurability certificate");
  witness->add_option("--m", m)->required();
  witness->add_option("--form", form_a, "Form of signature (m,1)")->required();
  witness->add_option("--property", property_text, "sw or spinc")->required();
  witness->add_option("--out", out_path, "Certificate path; stdout when omitted");
  witness->add_option("--bound", bound, "GHW search budget")->capture_default_str();
  witness->add_option("--complement", complement_text, "Use this positive definite f instead of the realized one");

  auto* verify = app.add_subcommand("verify", "Recompute and compare a certificate");
  verify->add_option("file", file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kPrecondition;
  }
  const Output emit{out, pretty};

  if (*invariants) {
    const FormInput input = parse_form_input(form_a);
    Json j = to_json(profile(input.form));
    if (input.diagonalized_from_matrix) j["diagonal"] = input.diagonalized_from_matrix->to_string();
    emit.emit(j);
    return kOk;
  }
  if (*hil) {
    emit.emit(hilbert_table(Rational::parse(hil_a), Rational::parse(hil_b), hil_place));
    return kOk;
  }
  if (*equiv) {
    emit.emit(to_json(rational_verdict(parse_form(form_a), parse_form(form_b))));
    return kOk;
  }
  if (*proj) {
    emit.emit(to_json(projectively_equivalent(parse_form(form_a), parse_form(form_b), widen)));
    return kOk;
  }
  if (*comm) {
    const DiagonalForm q1 = parse_form(form_a);
    const DiagonalForm q2 = parse_form(form_b);
    const bool verdict = commensurable(q1, q2);
    Json j{{"commensurable", verdict}};
    j["projective"] = to_json(projectively_equivalent(q1, q2));
    emit.emit(j);
    return kOk;
  }
  if (*real) {
    TargetProfile t;
    t.rank = rank;
    t.signature = parse_signature(sig_text);
    t.discriminant = SquareClass(Integer(Rational::parse(disc_text).numerator()));
    if (!Rational::parse(disc_text).is_integer()) throw ParseError("disc must be an integer", 0);
    t.negative_places = parse_places(neg_text);
    const Feasibility f = serre_feasible(t);
    Json j = to_json(f);
    if (!f.feasible) {
      j["form"] = nullptr;
      emit.emit(j);
      return kPrecondition;
    }
    const DiagonalForm g = realize(t, widen);
    j["form"] = g.to_string();
    j["profile"] = to_json(profile(g));
    emit.emit(j);
    return kOk;
  }
  if (*comp) {
    emit.emit(to_json(definite_complement(parse_form(form_a))));
    return kOk;
  }
  if (*build) {
    const CrystalPresentation p = im_kim(im_kim_n);
    emit.emit(to_json(circle ? product_with_circle(p) : p));
    return kOk;
  }
  if (*check) {
    const CrystalPresentation p = presentation_from_json(read_json_file(file));
    emit.emit(flat_report(p, ClosureOptions{max_holonomy}));
    return kOk;
  }
  if (*ghw) {
    const GhwSearchResult r = ghw_search(ghw_dim, bound);
    emit.emit(Json{{"found", r.presentation.has_value()},
                   {"examined", r.examined},
                   {"bound", bound},
                   {"presentation", r.presentation ? to_json(*r.presentation) : Json(nullptr)}});
    return r.presentation ? kOk : kExhausted;
  }
  if (*witness) {
    WitnessOptions options;
    options.ghw_bound = bound;
    if (complement_text) options.complement = parse_form(*complement_text);
    const CommensurabilityCertificate c = cusp_witness(m, parse_form(form_a), parse_property(property_text), options);
    const Json cert = to_json(c);
    const auto failures = requirement_failures(c);
    if (out_path.empty()) {
      emit.emit(cert);
    } else {
      std::ofstream file_out(out_path);
      if (!file_out) throw PreconditionError("cannot write '" + out_path + "'");
      file_out << cert.dump(2) << '\n';
      emit.emit(Json{{"out", out_path}, {"verified", failures.empty()}, {"requirements_failed", failures}});
    }
    return failures.empty() ? kOk : kMismatch;
  }
  if (*verify) {
    const VerificationResult r = verify_certificate(read_json_file(file));
    emit.emit(verification_json(r));
    return r.verified ? kOk : kMismatch;
  }
  return kPrecondition;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto report = [&](const std::string& kind, const std::string& message, std::optional<std::size_t> position) {
    Json j{{"error", kind}, {"message", message}};
    if (position) j["position"] = *position;
    out << j.dump() << '\n';
    err << "error: " << message << '\n';
  };
  try {
    return dispatch(args, out, err);
  } catch (const ParseError& e) {
    report("parse", e.what(), e.position());
    return kPrecondition;
  } catch (const SearchExhaustedError& e) {
    report("search_exhausted", e.what(), std::nullopt);
    return kExhausted;
  } catch (const Error& e) {
    report(error_kind(e), e.what(), std::nullopt);
    return kPrecondition;
  } catch (const nlohmann::json::exception& e) {
    report("parse", e.what(), std::nullopt);
    return kPrecondition;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace hypcomm::cli
