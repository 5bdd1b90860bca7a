#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouville/cli.hpp"
#include "liouville/conformal.hpp"
#include "liouville/inverse.hpp"
#include "oracles.hpp"

using namespace liouville;
using doctest::Approx;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"liouville"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double first_number(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_CASE("forward") {
  Outcome r = invoke({"forward", "--u", "6"});
  CHECK(r.code == cli::kExitOk);
  CHECK(first_number(r.out) == Approx(oracle::frozen::x_at_6).epsilon(1e-14));
  r = invoke({"--axes", "3,2,1", "forward", "--v", "2", "--method", "closed"});
  CHECK(r.code == cli::kExitOk);
  CHECK(first_number(r.out) == Approx(oracle::frozen::y_at_2).epsilon(1e-10));
  r = invoke({"forward", "--u", "4.1", "--method", "series"});
  CHECK(r.code == cli::kExitOk);
  CHECK(first_number(r.out) == Approx(x_of_u(4.1, make_shape(3, 2, 1))).epsilon(1e-10));
  r = invoke({"forward", "--u", "4"});
  CHECK(r.out == "0\n");
  r = invoke({"--digits", "4", "forward", "--u", "6"});
  CHECK(r.out == "1.547\n");
}

TEST_CASE("global options after the subcommand") {
  const Outcome r = invoke({"forward", "--u", "26", "--axes", "6,4,2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(first_number(r.out) == Approx(x_of_u(26, make_shape(6, 4, 2))).epsilon(1e-14));
}

TEST_CASE("inverse") {
  Outcome r = invoke({"inverse", "--x", "0.4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(first_number(r.out) == Approx(oracle::u_of_x(0.4, 3, 2, 1)).epsilon(1e-10));
  CHECK(r.out.find("root-solve") != std::string::npos);
  r = invoke({"inverse", "--y", "0.3", "--method", "closed"});
  CHECK(r.code == cli::kExitOk);
  CHECK(first_number(r.out) == Approx(oracle::v_of_y(0.3, 3, 2, 1)).epsilon(1e-9));
  CHECK(r.out.find("closed-form") != std::string::npos);
  r = invoke({"inverse", "--x", "0.05", "--method", "series"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("series") != std::string::npos);
}

TEST_CASE("usage and domain errors") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"forward"}).code == cli::kExitUsage);
  CHECK(invoke({"forward", "--u", "10"}).code == cli::kExitUsage);
  CHECK(invoke({"--axes", "1,2,3", "forward", "--u", "4"}).code == cli::kExitUsage);
  CHECK(invoke({"--axes", "3,2", "forward", "--u", "4"}).code == cli::kExitUsage);
  CHECK(invoke({"--digits", "30", "forward", "--u", "5"}).code == cli::kExitUsage);
  CHECK(invoke({"forward", "--u", "5", "--method", "magic"}).code == cli::kExitUsage);
  CHECK(invoke({"coeffs", "--order", "40"}).code == cli::kExitUsage);
  const Outcome r = invoke({"forward", "--u", "10"});
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("coefficient dump") {
  Outcome r = invoke({"coeffs", "--order", "2", "--exact"});
  REQUIRE(r.code == cli::kExitOk);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["order"] == 2);
  CHECK(doc["exact"] == true);
  bool found_a3 = false, found_c4 = false;
  for (const auto& c : doc["coefficients"]) {
    if (c["family"] == "A" && c["k"] == 3) {
      found_a3 = c["numerator"] == "7" && c["denominator"] == "6";
    }
    if (c["family"] == "C" && c["k"] == 4) {
      found_c4 = c["numerator"] == "-7" && c["denominator"] == "3072";
    }
  }
  CHECK(found_a3);
  CHECK(found_c4);
  // 3 odd terms for A, B, alpha, beta and 2 even terms for C, D, gamma, delta
  CHECK(doc["coefficients"].size() == 4 * 3 + 4 * 2);

  r = invoke({"coeffs", "--order", "1"});
  REQUIRE(r.code == cli::kExitOk);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["exact"] == false);
  CHECK(doc["coefficients"][0]["float"].get<double>() == 4.0);
}

TEST_CASE("mesh export") {
  const std::string path = "cli_test_mesh.obj";
  Outcome r = invoke({"mesh", "--grid", "5x4", "--out", path.c_str()});
  CHECK(r.code == cli::kExitOk);
  std::ifstream in(path);
  std::string line;
  int v = 0, f = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  CHECK(v == 20);
  CHECK(f == 12);
  std::remove(path.c_str());

  const std::string jpath = "cli_test_mesh.json";
  r = invoke({"mesh", "--kind", "curvature", "--grid", "3x3", "--format", "json", "--out",
              jpath.c_str()});
  CHECK(r.code == cli::kExitOk);
  std::ifstream jin(jpath);
  const nlohmann::json doc = nlohmann::json::parse(jin);
  CHECK(doc["vertices"].size() == 9);
  std::remove(jpath.c_str());

  CHECK(invoke({"mesh", "--grid", "5x4"}).code == cli::kExitUsage);
  CHECK(invoke({"mesh", "--grid", "5by4", "--out", "x.obj"}).code == cli::kExitUsage);
  CHECK(invoke({"mesh", "--grid", "5x4", "--out", "/nonexistent-dir/m.obj"}).code ==
        cli::kExitFailure);
}

TEST_CASE("verify") {
  const Outcome r = invoke({"verify", "--profile", "quick"});
  CHECK(r.code == cli::kExitOk);
  for (int id = 1; id <= 8; ++id) {
    CHECK(r.out.find("PASS " + std::to_string(id) + " ") != std::string::npos);
  }
  CHECK(invoke({"verify", "--profile", "huge"}).code == cli::kExitUsage);
}
