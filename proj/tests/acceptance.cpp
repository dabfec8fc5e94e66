#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "hypcomm/cli.hpp"
#include "hypcomm/equivalence.hpp"
#include "hypcomm/error.hpp"
#include "hypcomm/linalg.hpp"
#include "hypcomm/pipeline.hpp"
#include "hypcomm/realization.hpp"
#include "oracles.hpp"

using namespace hypcomm;
using oracle::i64;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

Place P(long p) { return Place::prime(Integer(p)); }

const std::vector<Place>& small_places() {
  static const std::vector<Place> places{Place::infinity(), P(2), P(3), P(5), P(7), P(11), P(13)};
  return places;
}

std::string str(const DiagonalForm& f) { return f.to_string(); }

MatrixQ diag(const std::vector<int>& entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  MatrixQ m = MatrixQ::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Rational(entries[static_cast<std::size_t>(i)]);
  return m;
}

// AC1
Outcome hilbert_oracle() {
  std::vector<Rational> values;
  for (int num = -20; num <= 20; ++num)
    for (int den = 1; den <= 20; ++den)
      if (num != 0 && std::gcd(num, den) == 1) values.emplace_back(Integer(num), Integer(den));
  const std::vector<Place> places{Place::infinity(), P(2), P(3), P(5), P(7), P(11)};
  Outcome out;
  std::size_t cases = 0;
  for (const auto& a : values)
    for (const auto& b : values)
      for (const auto& v : places) {
        ++cases;
        if (hilbert(a, b, v) != oracle::hilbert(a, b, v))
          out.fail("(" + a.to_string() + "," + b.to_string() + ")_" + v.to_string() + " disagrees");
      }
  if (out.pass) out.detail = std::to_string(cases) + " cases agree";
  return out;
}

// AC2
Outcome reciprocity() {
  std::mt19937_64 rng(2024);
  const std::vector<i64> primes{2, 3, 5, 7, 11, 13};
  Outcome out;
  for (int trial = 0; trial < 1000; ++trial) {
    const DiagonalForm f = oracle::random_form(rng, 1 + trial % 8, primes);
    int library_product = 1, oracle_product = 1;
    for (const auto& v : small_places()) {
      const int e = hasse_witt(f, v);
      library_product *= e;
      oracle_product *= oracle::hasse_witt(f, v);
      out.expect(e == profile(f).epsilon(v), str(f) + ": profile and hasse_witt differ at " + v.to_string());
    }
    // Places outside the support see only units, where every symbol is trivial.
    for (const long p : {17L, 19L, 23L}) out.expect(hasse_witt(f, P(p)) == 1, str(f) + ": nontrivial off support");
    out.expect(library_product == 1, str(f) + ": library product is -1");
    out.expect(oracle_product == 1, str(f) + ": oracle product is -1");
    out.expect(profile(f).negative_places.size() % 2 == 0, str(f) + ": odd number of negative places");
  }
  if (out.pass) out.detail = "1000 forms, product of epsilon_v = +1 (library and oracle)";
  return out;
}

// AC3
Outcome congruence_invariance() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> entry(-3, 3);
  const std::vector<i64> primes{2, 3, 5, 7};
  Outcome out;
  int pairs = 0;
  while (pairs < 500) {
    const int n = 1 + pairs % 6;
    MatrixQ q;
    if (pairs % 2 == 0) {
      q = oracle::random_form(rng, n, primes, 1).matrix();
    } else {
      q.resize(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) q(i, j) = q(j, i) = Rational(entry(rng));
      if (exact_determinant(q).is_zero()) continue;
    }
    MatrixQ s(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = Rational(entry(rng));
    } while (exact_determinant(s).is_zero());
    const DiagonalForm a = diagonalize(SymmetricForm(q)).form;
    const DiagonalForm b = diagonalize(SymmetricForm(MatrixQ(s.transpose() * q * s))).form;
    out.expect(profile(a) == profile(b), str(a) + " and " + str(b) + ": profiles differ");
    out.expect(rationally_equivalent(a, b), str(a) + " and " + str(b) + ": not equivalent");
    ++pairs;
  }
  if (out.pass) out.detail = "500 congruent pairs share profiles and are equivalent";
  return out;
}

// AC4
Outcome serre_round_trip() {
  std::mt19937_64 rng(4242);
  const std::vector<long> primes{2, 3, 5, 7, 11, 13};
  Outcome out;
  int realized = 0, drawn = 0;
  while (realized < 200) {
    ++drawn;
    TargetProfile t;
    t.rank = 1 + static_cast<int>(rng() % 8);
    const int s = static_cast<int>(rng() % static_cast<unsigned>(t.rank + 1));
    t.signature = {t.rank - s, s};
    Integer d(s % 2 == 0 ? 1 : -1);
    for (const long p : primes)
      if (rng() % 2) d *= p;
    t.discriminant = SquareClass(d);
    if ((s % 4) >= 2) t.negative_places.insert(Place::infinity());
    for (const long p : primes)
      if (rng() % 3 == 0) t.negative_places.insert(P(p));
    if (!serre_feasible(t).feasible) continue;
    const DiagonalForm f = realize(t);
    out.expect(profile(f) == t, "realized " + str(f) + " misses its target");
    for (const auto& v : small_places())
      out.expect(oracle::hasse_witt(f, v) == t.epsilon(v), str(f) + ": oracle epsilon differs at " + v.to_string());
    ++realized;
  }

  auto target = [](int r, int s, long disc, PlaceSet neg) {
    TargetProfile t;
    t.rank = r + s;
    t.signature = {r, s};
    t.discriminant = SquareClass(Integer(disc));
    t.negative_places = std::move(neg);
    return t;
  };
  TargetProfile rank_off = target(2, 1, -1, {});
  rank_off.rank = 4;
  const std::vector<std::pair<int, TargetProfile>> crafted{
      {1, target(3, 0, 1, {P(3)})},          // odd count of negative places
      {2, target(1, 0, 2, {P(2)})},          // rank 1 with a negative place
      {2, target(2, 0, 1, {P(2), P(5)})},    // rank 2, -d a local square at 5
      {3, rank_off},                         // r + s != n
      {4, target(2, 1, 1, {})},              // sign of d against (-1)^s
      {5, target(1, 2, 1, {})},              // epsilon_inf against s
  };
  for (const auto& [condition, t] : crafted) {
    const Feasibility f = serre_feasible(t);
    out.expect(!f.feasible && std::find(f.violated.begin(), f.violated.end(), condition) != f.violated.end(),
               "condition " + std::to_string(condition) + " not triggered");
    bool threw = false;
    try {
      realize(t);
    } catch (const PreconditionError&) {
      threw = true;
    }
    out.expect(threw, "realize accepted an infeasible target");
  }
  if (out.pass)
    out.detail = "200 targets realized (" + std::to_string(drawn) + " drawn); conditions 1-5 each triggered";
  return out;
}

// AC5
Outcome worked_instance() {
  const auto start = std::chrono::steady_clock::now();
  const DiagonalForm q = DiagonalForm::parse("<1,1,1,1,1,1,-3>");
  const ComplementCertificate c = definite_complement(q);
  const DiagonalForm& f = c.complement;
  Outcome out;
  out.expect(f.rank() == 5 && signature(f) == Signature{5, 0}, "complement is not positive definite of rank 5");
  i64 num = 1, den = 1;
  for (int i = 0; i < f.rank(); ++i) {
    num *= oracle::to_i64(f[i].numerator());
    den *= oracle::to_i64(f[i].denominator());
  }
  out.expect(oracle::squarefree_part(num, den) == 3, "oracle discriminant of " + str(f) + " is not 3");
  out.expect(c.complement_profile.discriminant.representative() == 3, "library discriminant is not 3");
  const DiagonalForm extended = direct_sum(f, hyperbolic_plane());
  for (const auto& v : small_places()) {
    const int expected = (v == P(2) || v == P(3)) ? -1 : 1;
    out.expect(oracle::hasse_witt(f, v) == expected, "oracle epsilon of " + str(f) + " wrong at " + v.to_string());
    out.expect(oracle::hasse_witt(extended, v) == oracle::hasse_witt(q, v),
               "oracle epsilon of the extension differs at " + v.to_string());
  }
  out.expect(profile(extended) == profile(q), "profile(q' + <1,-1>) != profile(q)");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.expect(seconds < 1.0, "took longer than 1 s");
  if (out.pass) out.detail = "q' = " + str(f) + ", disc 3, epsilon = -1 at {2,3}";
  return out;
}

// AC6
Outcome pipeline_sweep() {
  const std::vector<int> positives{1, 2, 3, 5, 6};
  const std::vector<int> negatives{-1, -2, -3, -5, -6};
  Outcome out;
  std::size_t forms = 0;
  for (const int m : {6, 7, 8}) {
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    const int k = static_cast<int>(positives.size());
    std::function<void(int, int)> sweep = [&](int pos, int lowest) {
      if (pos == m) {
        for (const int neg : negatives) {
          std::vector<Rational> coeffs;
          for (const int i : idx) coeffs.emplace_back(positives[static_cast<std::size_t>(i)]);
          coeffs.emplace_back(neg);
          const DiagonalForm q(coeffs);
          ++forms;
          try {
            const CommensurabilityCertificate c = cusp_witness(m, q, Property::SW);
            const auto failures = requirement_failures(c);
            out.expect(failures.empty(), str(q) + ": " + (failures.empty() ? "" : failures.front()));
            const VerificationResult r = verify_certificate(Json::parse(to_json(c).dump()));
            out.expect(r.verified, str(q) + ": verify failed" + (r.mismatches.empty() ? "" : ": " + r.mismatches.front()));
          } catch (const Error& e) {
            out.fail(str(q) + ": " + e.what());
          }
        }
        return;
      }
      for (int i = lowest; i < k; ++i) {
        idx[static_cast<std::size_t>(pos)] = i;
        sweep(pos + 1, i);
      }
    };
    sweep(0, 0);
  }
  if (out.pass) out.detail = std::to_string(forms) + " forms for m in {6,7,8}: certificate built and verified";
  return out;
}

// AC7
Outcome flat_suite() {
  std::mt19937_64 rng(7);
  const std::vector<i64> primes{2, 3, 5, 7, 11, 13};
  Outcome out;
  for (const int n : {1, 2, 3}) {
    const std::string name = "im_kim(" + std::to_string(n) + ")";
    const CrystalPresentation p = im_kim(n);
    const GroupClosure c = closure(p);
    out.expect(c.holonomy_order() == (std::size_t{1} << (n + 1)), name + ": holonomy order");
    out.expect(elementary_abelian_rank(c) == std::optional<int>(n + 1), name + ": holonomy is not (Z/2)^(n+1)");
    out.expect(is_torsion_free(c).torsion_free, name + ": torsion");
    out.expect(is_orientable(c), name + ": not orientable");
    for (int trial = 0; trial < 100; ++trial) {
      DiagonalForm f = oracle::random_form(rng, 2 * n + 1, primes, 1);
      std::vector<Rational> positive;
      for (int i = 0; i < f.rank(); ++i) positive.push_back(f[i].sign() < 0 ? -f[i] : f[i]);
      f = DiagonalForm(positive);
      out.expect(preserves_form(p, f), name + ": does not preserve " + str(f));
    }
  }
  out.expect(is_ghw(closure(im_kim(1))), "im_kim(1) is not GHW");
  out.expect(!is_ghw(closure(im_kim(2))), "im_kim(2) is GHW");
  if (out.pass) out.detail = "n = 1,2,3 closed, torsion-free, orientable, 300 forms preserved; GHW iff n = 1";
  return out;
}

// AC8
Outcome torsion_oracle() {
  const Rational half(Integer(1), Integer(2));
  std::vector<CrystalPresentation> fixtures{torus(1), torus(2), torus(3), im_kim(1)};
  std::vector<AffineIsometry> singles[4];
  for (int d = 1; d <= 3; ++d) {
    for (int signs = 0; signs < (1 << d); ++signs) {
      std::vector<int> entries;
      for (int i = 0; i < d; ++i) entries.push_back((signs >> i) & 1 ? -1 : 1);
      if (signs == 0) continue;
      for (int shift = 0; shift < (1 << d); ++shift) {
        AffineIsometry g = AffineIsometry::identity(d);
        g.linear = diag(entries);
        for (int i = 0; i < d; ++i)
          if ((shift >> i) & 1) g.translation(i) = half;
        singles[d].push_back(g);
        CrystalPresentation p = torus(d);
        p.generators.push_back(g);
        fixtures.push_back(p);
      }
    }
  }
  for (int d = 2; d <= 3; ++d)
    for (std::size_t i = 0; i < singles[d].size(); ++i)
      for (std::size_t j = i + 1; j < singles[d].size(); ++j) {
        if (singles[d][i].linear == singles[d][j].linear) continue;
        CrystalPresentation p = torus(d);
        p.generators.push_back(singles[d][i]);
        p.generators.push_back(singles[d][j]);
        fixtures.push_back(p);
      }
  MatrixQ rot(2, 2);
  rot << Rational(0), Rational(-1), Rational(1), Rational(0);
  CrystalPresentation quarter = torus(2);
  quarter.generators.push_back({rot, VectorQ::Zero(2)});
  fixtures.push_back(quarter);
  MatrixQ screw = MatrixQ::Zero(3, 3);
  screw(0, 1) = Rational(-1), screw(1, 0) = Rational(1), screw(2, 2) = Rational(1);
  CrystalPresentation screw_flat = torus(3);
  AffineIsometry s = AffineIsometry::identity(3);
  s.linear = screw;
  s.translation(2) = Rational(Integer(1), Integer(4));
  screw_flat.generators.push_back(s);
  fixtures.push_back(screw_flat);

  Outcome out;
  int torsion_free = 0;
  for (const auto& p : fixtures) {
    const GroupClosure c = closure(p);
    const TorsionReport r = is_torsion_free(c);
    const bool brute = oracle::has_torsion_in_box(c, 2, static_cast<int>(c.holonomy_order()));
    out.expect(r.torsion_free == !brute, "disagreement on a dimension " + std::to_string(p.dimension) + " fixture");
    if (!r.torsion_free) out.expect(r.witness && r.fixed_point && r.witness->apply(*r.fixed_point) == *r.fixed_point,
                                    "torsion witness has no fixed point");
    torsion_free += r.torsion_free;
  }
  if (out.pass)
    out.detail = std::to_string(fixtures.size()) + " fixtures agree (" + std::to_string(torsion_free) +
                 " torsion-free)";
  return out;
}

// AC9
Outcome ghw_five() {
  const GhwSearchResult r = ghw_search(5);
  Outcome out;
  if (!r.presentation) {
    out.fail("search exhausted after " + std::to_string(r.examined) + " candidates within bound " +
             std::to_string(kDefaultGhwBound));
    return out;
  }
  const GroupClosure c = closure(*r.presentation);
  out.expect(is_torsion_free(c).torsion_free, "result has torsion");
  out.expect(is_ghw(c), "result is not GHW");
  if (out.pass)
    out.detail = "found after " + std::to_string(r.examined) + " candidates (bound " +
                 std::to_string(kDefaultGhwBound) + "), holonomy order " + std::to_string(c.holonomy_order());
  return out;
}

int cli(std::vector<std::string> args, std::string& stdout_text) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  stdout_text = out.str();
  return code;
}

// AC10
Outcome negative_controls() {
  Outcome out;
  const ProjectiveVerdict v =
      projectively_equivalent(DiagonalForm::parse("<1,1,-1>"), DiagonalForm::parse("<1,1,-3>"));
  out.expect(!v.equivalent, "<1,1,-1> and <1,1,-3> reported equivalent");
  out.expect(v.obstruction && v.obstruction->place == P(3), "obstruction is not at p = 3");

  std::string text;
  int code = cli({"proj-equiv", "<1,1,-1>", "<1,1,-3>"}, text);
  Json j = Json::parse(text);
  out.expect(code == 0 && j["equivalent"] == false && j["obstruction"]["place"] == "3",
             "proj-equiv CLI does not report the obstruction at 3");

  code = cli({"realize", "--rank", "1", "--sig", "1,0", "--disc", "2", "--neg-places", "2"}, text);
  j = Json::parse(text);
  const Json& violated = j["violated"];
  out.expect(code == 1 && std::find(violated.begin(), violated.end(), 2) != violated.end(),
             "realize rank 1 not rejected citing condition 2");

  code = cli({"cusp-witness", "--m", "5", "--form", "<1,1,1,1,1,-1>", "--property", "spinc"}, text);
  out.expect(code == 1 && Json::parse(text)["error"] == "precondition", "cusp-witness m = 5 not rejected");

  const std::string path = (std::filesystem::temp_directory_path() / "hypcomm_acceptance_cert.json").string();
  Json cert = to_json(cusp_witness(6, DiagonalForm::parse("<1,1,1,1,1,1,-3>"), Property::SW));
  cert["invariants"]["complement"]["neg_places"] = Json::array({"2", "5"});
  std::ofstream(path) << cert.dump();
  code = cli({"verify", path}, text);
  out.expect(code == 2 && Json::parse(text)["verified"] == false, "corrupted certificate verified");
  std::remove(path.c_str());

  if (out.pass)
    out.detail = "obstruction at 3; realize cites condition 2; m = 5 spinc rejected; corrupted certificate exit 2";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"hilbert symbol agrees with the local solvability oracle", hilbert_oracle},
      {"hilbert reciprocity on random forms", reciprocity},
      {"congruence invariance of profiles", congruence_invariance},
      {"realization round-trip and infeasibility conditions", serre_round_trip},
      {"worked complement instance for <1,1,1,1,1,1,-3>", worked_instance},
      {"cusp-witness and verify for m = 6, 7, 8", pipeline_sweep},
      {"Im-Kim flat manifold suite", flat_suite},
      {"torsion test agrees with brute force in dimension <= 3", torsion_oracle},
      {"ghw_search(5) within the default bound", ghw_five},
      {"negative controls", negative_controls},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("AC%-2zu %s  %s: %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
