#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypcomm/cli.hpp"
#include "hypcomm/serialize.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  hypcomm::Json json() const { return hypcomm::Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hypcomm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hypcomm_test_" + name)).string();
}

}  // namespace

TEST_CASE("invariants") {
  const Result r = run({"invariants", "<1,1,1,-3>"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"rank\":4,\"sig\":[3,1],\"disc\":\"-3\",\"neg_places\":[]}\n");
  const Result m = run({"invariants", "[[0,1],[1,0]]"});
  CHECK(m.code == 0);
  CHECK(m.json()["sig"] == hypcomm::Json::array({1, 1}));
  CHECK(m.json()["disc"] == "-1");
  const Result pretty = run({"invariants", "<1,1>", "--pretty"});
  CHECK(pretty.out.find("\n  \"rank\": 2") != std::string::npos);
}

TEST_CASE("projective equivalence and commensurability") {
  const Result r = run({"proj-equiv", "<1,1,-1>", "<2,2,-2>"});
  CHECK(r.code == 0);
  CHECK(r.json()["equivalent"] == true);
  CHECK(r.json()["witness"] == "2");
  const Result x = run({"proj-equiv", "<1,1,-1>", "<1,1,-3>"});
  CHECK(x.json()["equivalent"] == false);
  CHECK(x.json()["obstruction"]["place"] == "3");
  CHECK(run({"equiv", "<1,1>", "<2,2>"}).json()["equivalent"] == true);
  CHECK(run({"commensurable", "<1,1,1,1,1,1,-1>", "<2,2,2,2,2,2,-2>"}).json()["commensurable"] == true);
  const Result mismatch = run({"commensurable", "<1,1,-1>", "<1,1,1,-1>"});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.json()["error"] == "signature");
}

TEST_CASE("hilbert") {
  CHECK(run({"hilbert", "2", "3", "--place", "3"}).json()["symbol"] == -1);
  const Result all = run({"hilbert", "-1", "-1"});
  CHECK(all.code == 0);
  CHECK(all.json()["symbols"]["inf"] == -1);
  CHECK(all.json()["symbols"]["2"] == -1);
}

TEST_CASE("realize") {
  const Result bad = run({"realize", "--rank", "1", "--sig", "1,0", "--disc", "2", "--neg-places", "2"});
  CHECK(bad.code == 1);
  CHECK(bad.json()["feasible"] == false);
  const auto violated = bad.json()["violated"];
  CHECK(std::find(violated.begin(), violated.end(), 2) != violated.end());
  const Result good = run({"realize", "--rank", "5", "--sig", "5,0", "--disc", "3", "--neg-places", "2,3"});
  CHECK(good.code == 0);
  CHECK(good.json()["form"] == "<1,1,1,2,6>");
}

TEST_CASE("complement") {
  const Result r = run({"complement", "<1,1,1,1,1,1,-3>"});
  CHECK(r.code == 0);
  CHECK(r.json()["complement"] == "<1,1,1,2,6>");
  CHECK(r.json()["profiles_match"] == true);
  CHECK(run({"complement", "<1,1,1,1,-1>"}).code == 1);
}

TEST_CASE("flat subcommands") {
  const Result built = run({"flat", "build", "im-kim", "--n", "2"});
  CHECK(built.code == 0);
  CHECK(built.json()["dimension"] == 5);
  CHECK(built.json()["generators"].size() == 6);
  const std::string path = temp_path("ik2.json");
  std::ofstream(path) << built.out;
  const Result checked = run({"flat", "check", path});
  CHECK(checked.code == 0);
  CHECK(checked.json()["holonomy_order"] == 8);
  CHECK(checked.json()["torsion_free"] == true);
  CHECK(checked.json()["ghw"] == false);
  CHECK(checked.json()["flags"]["sw_nonvanishing_range"] == 2);
  CHECK(run({"flat", "check", path, "--max-holonomy", "2"}).json()["error"] == "not_crystallographic");
  std::remove(path.c_str());

  const Result circled = run({"flat", "build", "im-kim", "--n", "1", "--circle"});
  CHECK(circled.json()["dimension"] == 4);
  const Result ghw = run({"flat", "ghw-search", "--dim", "5"});
  CHECK(ghw.code == 0);
  CHECK(ghw.json()["found"] == true);
  CHECK(run({"flat", "ghw-search", "--dim", "5", "--bound", "3"}).code == 3);
  CHECK(run({"flat", "ghw-search", "--dim", "4"}).code == 1);
}

TEST_CASE("cusp-witness and verify") {
  const std::string path = temp_path("cert.json");
  const Result made = run({"cusp-witness", "--m", "6", "--form", "<1,1,1,1,1,1,-3>", "--property", "sw", "--out", path});
  CHECK(made.code == 0);
  CHECK(made.json()["verified"] == true);
  const Result ok = run({"verify", path});
  CHECK(ok.code == 0);
  CHECK(ok.json()["verified"] == true);

  hypcomm::Json cert;
  std::ifstream(path) >> cert;
  cert["invariants"]["complement"]["disc"] = "7";
  std::ofstream(path) << cert.dump();
  const Result broken = run({"verify", path});
  CHECK(broken.code == 2);
  CHECK(broken.out.find("invariants.complement.disc") != std::string::npos);

  std::ofstream(path) << "{not json";
  CHECK(run({"verify", path}).code == 1);
  std::remove(path.c_str());

  CHECK(run({"cusp-witness", "--m", "5", "--form", "<1,1,1,1,1,-1>", "--property", "spinc"}).code == 1);
  CHECK(run({"cusp-witness", "--m", "6", "--form", "<1,1,1,1,1,1,-1>", "--property", "spinc", "--bound", "2"}).code ==
        3);
  const Result wrong = run({"cusp-witness", "--m", "6", "--form", "<1,1,1,1,1,1,-3>", "--property", "sw",
                            "--complement", "<1,1,1,1,1>"});
  CHECK(wrong.code == 2);
}

TEST_CASE("errors") {
  const Result parse = run({"invariants", "<1,2,x>"});
  CHECK(parse.code == 1);
  CHECK(parse.json()["error"] == "parse");
  CHECK(parse.json()["position"] == 5);
  CHECK_FALSE(parse.err.empty());
  CHECK(run({"invariants", "<1,1>", "--bogus"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"invariants", "[[1,2],[2,4]]"}).json()["error"] == "degenerate_form");
}

TEST_CASE("output is stable and forms round-trip") {
  for (const char* form : {"<1,1,1,-3>", "<1/2,-3/4,5>", "<-7>"}) {
    const Result a = run({"invariants", form});
    const Result b = run({"invariants", form});
    CHECK(a.out == b.out);
    CHECK(hypcomm::DiagonalForm::parse(hypcomm::DiagonalForm::parse(form).to_string()) ==
          hypcomm::DiagonalForm::parse(form));
  }
  const std::vector<std::string> args{"cusp-witness", "--m", "7", "--form", "<1,1,1,1,1,1,2,-1>", "--property", "spinc"};
  CHECK(run(args).out == run(args).out);
}
