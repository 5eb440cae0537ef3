#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "coxiota/presets.hpp"
#include "json.hpp"

using namespace coxiota;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"coxiota"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string("coxiota_test_group.json");
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("preset resolution") {
  CHECK(resolve_group("A5").system.rank() == 5);
  CHECK(resolve_group("A5").theta.is_identity());
  CHECK_FALSE(resolve_group("A5:flip").theta.is_identity());
  CHECK(resolve_group("I2(7)").system.backend() == Backend::dihedral);
  CHECK(resolve_group("B3").system.finite_type()->label == "B3");
  CHECK(resolve_group("D5:swap").theta.image ==
        std::vector<int>{1, 0, 2, 3, 4});
  CHECK(resolve_group("affineA2").theta.image == std::vector<int>{0, 2, 1});
  CHECK(resolve_group("square(A2)").system.rank() == 4);
  CHECK(resolve_group("square(A2)").theta.image ==
        std::vector<int>{2, 3, 0, 1});
  CHECK(resolve_group("E6:flip").theta.image ==
        std::vector<int>{5, 1, 4, 3, 2, 0});
  CHECK_THROWS_AS(resolve_group("Z9"), error);
  CHECK_THROWS_AS(resolve_group("B3:flip"), error);  // B has no symmetry
  // explicit image list override
  CHECK(resolve_group("A3", "2,1,0").theta.image == std::vector<int>{2, 1, 0});
  CHECK_THROWS_AS(resolve_group("A3", "1,0,2"), error);  // not an automorphism
}

TEST_CASE("group files") {
  const TempFile file(R"({"size": 3, "m": [[1,3,2],[3,1,3],[2,3,1]], "theta": [2,1,0]})");
  const GroupSpec spec = load_group_file(file.path);
  CHECK(spec.system.rank() == 3);
  CHECK(spec.system.finite_type()->label == "A3");
  CHECK(spec.theta.image == std::vector<int>{2, 1, 0});
  CHECK(resolve_group(file.path).theta.image == std::vector<int>{2, 1, 0});

  // infinite bonds are encoded as zero
  const TempFile inf(R"({"size": 2, "m": [[1,0],[0,1]]})");
  const GroupSpec spec_inf = load_group_file(inf.path);
  CHECK_FALSE(spec_inf.system.is_finite());
  CHECK(spec_inf.system.backend() == Backend::matrix);

  const TempFile bad(R"({"size": 2, "m": [[1,3],[3,1]], "theta": [0,2]})");
  CHECK_THROWS_AS(load_group_file(bad.path), error);
}

TEST_CASE("cli enumerate") {
  const CliResult r = run_cli({"enumerate", "--group", "A5:flip", "--set", "iota"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("15 elements") != std::string::npos);

  const CliResult rw = run_cli({"enumerate", "--group", "A2", "--set", "W"});
  CHECK(rw.exit_code == 0);
  CHECK(rw.out.find("6 elements") != std::string::npos);
  CHECK(rw.out.find("121 3") != std::string::npos);

  const CliResult rj = run_cli({"enumerate", "--group", "affineA2", "--set",
                                "iota", "--max-rank", "3", "--format", "json"});
  CHECK(rj.exit_code == 0);
  const auto doc = nlohmann::json::parse(rj.out);
  CHECK(doc.at("truncated_at") == 3);
  bool found = false;
  for (const auto& row : doc.at("rows"))
    if (row.at("sexpr") == "213" && row.at("rho") == 3) found = true;
  CHECK(found);

  // identical invocations are byte-identical
  const CliResult again = run_cli({"enumerate", "--group", "A5:flip", "--set", "iota"});
  CHECK(again.out == r.out);
}

TEST_CASE("cli poset export") {
  const CliResult dot = run_cli({"poset", "--group", "D4:swap", "--format", "dot"});
  CHECK(dot.exit_code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
  CHECK(dot.out.find("rank=same") != std::string::npos);

  const CliResult js = run_cli({"poset", "--group", "A5:flip", "--format", "json"});
  CHECK(js.exit_code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc.at("elements").size() == 15);
}

TEST_CASE("cli checks and exit codes") {
  CHECK(run_cli({"check", "graded", "--group", "A5:flip"}).exit_code == 0);

  const CliResult fail =
      run_cli({"check", "graded", "--group", "affineA2", "--max-rank", "3"});
  CHECK(fail.exit_code == 1);
  CHECK(fail.out.find("e < 3 < 213") != std::string::npos);
  CHECK(fail.out.find("e < 2 < 21 < 213") != std::string::npos);

  // budget exhaustion is exit code 2
  const CliResult budget = run_cli({"enumerate", "--group", "affineA2", "--set",
                                    "inv", "--max-rank", "10",
                                    "--budget-elements", "5"});
  CHECK(budget.exit_code == 2);
  const CliResult chains =
      run_cli({"homology", "--group", "A5:flip", "--interval", "e", "123412",
               "--budget-chains", "10"});
  CHECK(chains.exit_code == 2);

  // factorization reports carry machine-readable coefficient arrays
  const CliResult fact = run_cli({"check", "factorization", "--group", "A2:flip",
                                  "--format", "json"});
  CHECK(fact.exit_code == 1);
  const auto fdoc = nlohmann::json::parse(fact.out);
  CHECK(fdoc.at("data").at("poin_iota") ==
        nlohmann::json::array({"1", "2"}));
  CHECK(fdoc.at("data").at("quotient") ==
        nlohmann::json::array({"1", "1", "1"}));

  // a single row for the identity automorphism
  const CliResult one = run_cli({"enumerate", "--group", "A3", "--set", "iota"});
  CHECK(one.exit_code == 0);
  CHECK(one.out.find("(1 elements)") != std::string::npos);

  // usage and input errors are exit code 3
  CHECK(run_cli({"enumerate", "--group", "Z9", "--set", "W"}).exit_code == 3);
  CHECK(run_cli({"enumerate"}).exit_code == 3);
  CHECK(run_cli({"check", "nonsense", "--group", "A2"}).exit_code == 3);
  CHECK(run_cli({"enumerate", "--group", "affineA2", "--set", "W"}).exit_code == 3);
}

TEST_CASE("cli homology") {
  const CliResult sphere =
      run_cli({"homology", "--group", "A5:flip", "--interval", "e", "121"});
  CHECK(sphere.exit_code == 0);
  CHECK(sphere.out.find("SPHERE(1)") != std::string::npos);
  CHECK(sphere.out.find("H~1 = Z^1") != std::string::npos);

  // covers produce the empty complex
  const CliResult cover =
      run_cli({"homology", "--group", "A5:flip", "--interval", "e", "1"});
  CHECK(cover.exit_code == 0);
  CHECK(cover.out.find("SPHERE(-1)") != std::string::npos);

  // incomparable or reversed endpoints exit 3
  const CliResult reversed =
      run_cli({"homology", "--group", "A5:flip", "--interval", "121", "e"});
  CHECK(reversed.exit_code == 3);
}
