#include "hadamard/report.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using hadamard::Json;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("lab_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int lab(const std::string& args, const std::string& env = "") {
  const std::string cmd = "env -u LAB_SEED " + env + " " + LAB_EXE + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Json report(const std::string& path) { return Json::parse(slurp(path)); }

}  // namespace

TEST_CASE("flat z^3 with the numeric convexifier passes") {
  Sandbox s;
  CHECK(lab("three-circle --model flat --n 1 --f \"z^3\" --radii 0.1:10:50 --h auto --out " + s.path("")) == 0);
  const Json r = report(s.path("three-circle.json"));
  CHECK(r["verdict"] == "pass");
  CHECK(r["checks"][0]["min_second_difference"].get<double>() >= -1e-6);
  CHECK(fs::exists(s.path("three-circle.csv")));
}

TEST_CASE("hyperbolic violation and the expect-violation inversion") {
  Sandbox s;
  const std::string base = "three-circle --model hyperbolic --f z --radii 0.5:1.5:3 --h logr --out " + s.path("");
  CHECK(lab(base + " --expect-violation") == 0);
  CHECK(report(s.path("three-circle.json"))["verdict"] == "violation-as-expected");
  CHECK(lab(base) == 1);
  CHECK(report(s.path("three-circle.json"))["verdict"] == "violation");
  CHECK(lab("three-circle --model flat --f z --radii 0.5:1.5:3 --expect-violation --out " + s.path("")) == 1);
  CHECK(report(s.path("three-circle.json"))["verdict"] == "unexpected-pass");
}

TEST_CASE("power-decay dimension example") {
  Sandbox s;
  CHECK(lab("dimension --regime power-decay --A 0.05 --eps 0.49 --d 2 --n 2 --out " + s.path("")) == 0);
  const Json r = report(s.path("dimension.json"));
  CHECK(r["checks"][0]["bound"] == 6);
  CHECK(r["checks"][0]["regime"] == "sharp");
}

TEST_CASE("usage and solver errors exit with 2") {
  Sandbox s;
  const std::string out = " --out " + s.path("");
  CHECK(lab("") == 2);
  CHECK(lab("frobnicate" + out) == 2);
  CHECK(lab("three-circle --model sphere --f z --radii 1,4" + out) == 2);
  CHECK(lab("three-circle --model torus --f z --radii 1,2,3" + out) == 2);
  CHECK(lab("three-circle --model flat --f \"z^\" --radii 1,2,3" + out) == 2);
  CHECK(lab("three-circle --model flat --f z --radii 1:2" + out) == 2);
  CHECK(lab("dimension --regime power-decay --A 0.05 --eps 0.6 --d 2" + out) == 2);
  CHECK(lab("curvature --config " + s.path("missing.json") + out) == 2);
  CHECK(lab("suite nonexistent" + out) == 2);
  CHECK(lab("--help") == 0);
  CHECK(lab("three-circle --help") == 0);
}

TEST_CASE("config files are validated") {
  Sandbox s;
  {
    std::ofstream(s.path("bad.json")) << R"({"model": "flat", "radius": 3})";
    std::ofstream(s.path("broken.json")) << R"({"model": )";
  }
  CHECK(lab("curvature --config " + s.path("bad.json") + " --out " + s.path("")) == 2);
  CHECK(lab("curvature --config " + s.path("broken.json") + " --out " + s.path("")) == 2);
}

TEST_CASE("flags override the config and LAB_SEED overrides the config seed") {
  Sandbox s;
  {
    std::ofstream(s.path("cfg.json")) << R"({"model": "cigar", "radii": "0.5:2:4", "seed": 11, "prefix": "fromfile"})";
  }
  const std::string base = "curvature --config " + s.path("cfg.json") + " --out " + s.path("");
  REQUIRE(lab(base) == 0);
  Json r = report(s.path("fromfile.json"));
  CHECK(r["seed"] == 11);
  CHECK(r["config"]["model"] == "cigar");

  REQUIRE(lab(base, "LAB_SEED=22") == 0);
  CHECK(report(s.path("fromfile.json"))["seed"] == 22);

  REQUIRE(lab(base + " --seed 33 --model hyperbolic --prefix flagged", "LAB_SEED=22") == 0);
  r = report(s.path("flagged.json"));
  CHECK(r["seed"] == 33);
  CHECK(r["config"]["model"] == "hyperbolic");

  CHECK(lab(base, "LAB_SEED=notanumber") == 2);
}

TEST_CASE("reports carry the documented fields") {
  Sandbox s;
  REQUIRE(lab("curvature --model sphere --radii 0.5:2.5:5 --out " + s.path("")) == 0);
  const Json r = report(s.path("curvature.json"));
  for (const char* key : {"artifact_version", "command", "config", "seed", "expect_violation", "verdict", "exit_code",
                          "checks", "outputs", "timings", "summary"})
    CHECK(r.contains(key));
  CHECK(r["command"] == "curvature");
  const std::string csv = slurp(s.path("curvature.csv"));
  CHECK(csv.rfind("r,rho,H,hessian,identity_residual\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("CSV output is byte-identical across runs") {
  Sandbox s;
  const std::string args = "three-circle --model cigar --n 2 --f \"z1^2*z2 + z2\" --radii 0.2:2:5:log --seed 5 --out ";
  REQUIRE(lab(args + s.path("a")) == 0);
  REQUIRE(lab(args + s.path("b")) == 0);
  CHECK(slurp(s.path("a/three-circle.csv")) == slurp(s.path("b/three-circle.csv")));
  CHECK_FALSE(slurp(s.path("a/three-circle.csv")).empty());
}

TEST_CASE("every subcommand runs from flags") {
  Sandbox s;
  const std::string out = " --out " + s.path("");
  CHECK(lab("ode --bound constant --c -1 --u lower_bound_minus_one" + out) == 0);
  CHECK(lab("ode --bound power_decay --A 0.05 --eps 0.49 --u power_decay" + out) == 0);
  CHECK(lab("ode --bound constant --c -1 --u nonneg" + out) == 1);
  CHECK(lab("monotonicity --model flat --f \"z^2 + z\" --radii 0.1:10:12:log --direction nonincreasing --d 2" + out) == 0);
  CHECK(lab("necessity --model sphere" + out) == 0);
  CHECK(lab("homogeneity --model flat --f \"z^2 + z\"" + out) == 0);
  CHECK(lab("dimension --regime exp --C 0.18 --d 3 --n 2 --c1 1.5" + out) == 0);
  CHECK(lab("suite dimension" + out) == 0);
  CHECK(report(s.path("suite.json"))["verdict"] == "pass");
}
