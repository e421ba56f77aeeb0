#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "curvel2/cli.hpp"
#include "curvel2/local_analysis.hpp"

using namespace curvel2;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(CURVEL2_FIXTURES) + "/" + name; }

const json& entry(const json& r, const std::string& name) { return r["results"]["table"]["entries"][name]; }

}  // namespace

TEST_CASE("analyze cuspidal cubic equation") {
  const Run r = run({"analyze", "--input", fixture("cusp_cubic.txt")});
  REQUIRE(r.code == kExitOk);
  const json j = r.report();
  CHECK(j["tool"] == "curvel2");
  CHECK(j["command"] == "analyze");
  CHECK(j["results"]["g"] == 0);
  CHECK(j["results"]["m"] == 1);
  REQUIRE(j["results"]["singular_points"].size() == 1);
  const json& p = j["results"]["plane_curve"]["points"][0];
  CHECK(p["multiplicity"] == 2);
  CHECK(p["mult_prime"] == 1);
  CHECK(p["delta"] == 1);
  CHECK(p["branch_count"] == 1);
  CHECK(p["conductor"] == 2);
  CHECK(p["branches"][0]["s"] == 2);
  for (const auto& id : j["identities"]) CHECK(id["pass"] == true);
}

TEST_CASE("smooth conic has no singular points") {
  const json j = run({"analyze", "--input", fixture("conic.txt")}).report();
  CHECK(j["results"]["g"] == 0);
  CHECK(j["results"]["singular_points"].empty());
}

TEST_CASE("reports are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"analyze", "--input", fixture("cusp_cubic.txt")},
           {"cohomology", "--input", fixture("two_components.json"), "--bundle-degree", "c1=2,c2=-1"},
           {"local", "--s", "3"}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seconds") == std::string::npos);
  }
}

TEST_CASE("cohomology of a genus two curve with a degree five bundle") {
  for (const std::vector<std::string> bundle : {std::vector<std::string>{"--bundle-degree", "5"},
                                                {"--bundle-degree", "c1=5"},
                                                {"--bundle", fixture("bundle_c1_5.json")}}) {
    std::vector<std::string> args = {"cohomology", "--input", fixture("genus2.json")};
    args.insert(args.end(), bundle.begin(), bundle.end());
    const Run r = run(args);
    REQUIRE(r.code == kExitOk);
    const json j = r.report();
    // h^0 of a degree 5 divisor on genus 2: 5 - 2 + 1 = 4, nonspecial since 5 > 2g - 2.
    CHECK(entry(j, "h_s^{0,0}")["lo"] == 4);
    CHECK(entry(j, "h_s^{0,0}")["hi"] == 4);
    CHECK(entry(j, "h_w^{0,1}")["lo"] == 0);
    CHECK(j["results"]["vanishing_threshold"] == 2);
    CHECK(j["warnings"].empty());
  }
}

TEST_CASE("cuspidal cubic trivial bundle table") {
  const json j = run({"cohomology", "--input", fixture("cusp_spec.json")}).report();
  CHECK(entry(j, "h_w^{0,0}")["lo"] == 2);
  CHECK(entry(j, "h_w^{1,1}")["lo"] == 1);
  CHECK(entry(j, "h_s^{0,0}")["lo"] == 1);
  CHECK(entry(j, "h_s^{1,1}")["lo"] == 2);
  CHECK(j["results"]["ample_degree_bound"] == 3);
  CHECK(j["identities"].size() == 9);  // rr, serre, vanishing
}

TEST_CASE("special range is flagged class dependent") {
  for (const char* mode : {"exact", "generic"}) {
    const Run r = run({"cohomology", "--input", fixture("genus2.json"), "--bundle-degree", "1", "--mode", mode});
    REQUIRE(r.code == kExitOk);
    const json j = r.report();
    CHECK(entry(j, "h_w^{0,0}")["class_dependent"] == true);
    REQUIRE_FALSE(j["warnings"].empty());
    CHECK(j["warnings"][0].get<std::string>().rfind("class_dependent", 0) == 0);
  }
}

TEST_CASE("table format") {
  const Run r = run({"cohomology", "--input", fixture("genus2.json"), "--bundle-degree", "5", "--format", "table"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("h_s p=0  4") != std::string::npos);
  CHECK(r.out.find("[pass] rr_w_0") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("local command at s = 2") {
  const Run r = run({"local", "--s", "2"});
  REQUIRE(r.code == kExitOk);
  const json j = r.report();
  CHECK(j["results"]["pullback_exponents"]["(0,0)"] == 1);
  CHECK(j["results"]["pullback_exponents"]["(1,1)"] == -1);
  CHECK(j["results"]["local_table"].size() == 16);
  CHECK(j["results"]["local_table"][0]["k_min"] == -1);
  for (const auto& m : j["results"]["membership"]) CHECK(m["agree"] == true);
  for (const auto& id : j["identities"]) CHECK(id["pass"] == true);
}

TEST_CASE("local command solves a supplied grid") {
  const std::string in = "test_cli_rhs.grid", out = "test_cli_u.grid";
  // dbar of (1 - 4|t|^2)^4 on |t| < 1/2
  auto f = [](std::complex<double> t) -> std::complex<double> {
    const double a = 1 - 4 * std::norm(t);
    return a > 0 ? -16.0 * t * a * a * a : 0.0;
  };
  write_grid(in, GridFunction::sample(64, f, 0.5));
  const Run r = run({"local", "--grid", "64", "--input", in, "--output", out});
  REQUIRE(r.code == kExitOk);
  const json j = r.report();
  CHECK(j["results"]["cauchy"]["input"]["n"] == 64);
  CHECK(j["results"]["cauchy"]["input"]["residual"].get<double>() < 0.05);
  CHECK(read_grid(out).n == 64);
  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST_CASE("input errors exit with code 2") {
  const std::vector<std::vector<std::string>> cases = {
      {"analyze", "--input", fixture("nonreduced.txt")},
      {"analyze", "--input", fixture("repeated.txt")},
      {"analyze", "--input", fixture("corrupted.json")},
      {"analyze", "--input", fixture("truncated.json")},
      {"analyze", "--input", fixture("missing.json")},
      {"analyze"},
      {"cohomology", "--input", fixture("two_components.json"), "--bundle-degree", "3"},
      {"cohomology", "--input", fixture("two_components.json"), "--bundle-degree", "c3=1"},
      {"cohomology", "--input", fixture("genus2.json"), "--bundle-degree", "x"},
      {"cohomology", "--input", fixture("genus2.json"), "--bundle-degree", "1", "--bundle", fixture("bundle_c1_5.json")},
      {"cohomology", "--input", fixture("genus2.json"), "--mode", "typical"},
      {"local", "--grid", "100"},
      {"local", "--grid", "2048"},
      {"local", "--s", "0"},
      {"bogus"},
      {}};
  for (const auto& args : cases) {
    const Run r = run(args);
    INFO(r.err);
    CHECK(r.code == kExitInput);
    CHECK(r.err.rfind("error: ", 0) == 0);
  }
}

TEST_CASE("validation failures list every violation") {
  const Run r = run({"analyze", "--input", fixture("corrupted.json")});
  CHECK(r.code == kExitInput);
  const json j = r.report();
  CHECK(j["error"]["kind"] == "validation");
  CHECK(j["error"]["violations"].size() == 4);
}

TEST_CASE("mathematical failures exit with code 1") {
  // A reducible conic supplied as one component: its genus comes out negative.
  const std::string path = "test_cli_reducible.txt";
  std::ofstream(path) << "x*y\n";
  const Run r = run({"analyze", "--input", path});
  std::remove(path.c_str());
  CHECK(r.code == kExitFailure);
  CHECK(r.report()["error"]["kind"] == "math");
}

TEST_CASE("version") {
  const Run r = run({"--version"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find(kToolVersion) != std::string::npos);
}
