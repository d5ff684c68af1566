#include "oracles.hpp"

#include "hadamard/error.hpp"
#include "hadamard/radial_metric.hpp"
#include "hadamard/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace hadamard;

TEST_CASE("distance from the origin matches the closed forms") {
  for (double rho : {1e-4, 0.1, 0.5, 0.9, 0.999}) {
    CHECK(flat_model().r_of_rho(rho) == doctest::Approx(oracle::flat_r(rho)).epsilon(1e-14));
    CHECK(cigar_model().r_of_rho(rho) == doctest::Approx(oracle::cigar_r(rho)).epsilon(1e-12));
    CHECK(hyperbolic_model().r_of_rho(rho) == doctest::Approx(oracle::hyperbolic_r(rho)).epsilon(1e-12));
    CHECK(sphere_model().r_of_rho(rho) == doctest::Approx(oracle::sphere_r(rho)).epsilon(1e-12));
  }
  CHECK(hyperbolic_model(4.0).r_of_rho(0.5) == doctest::Approx(0.5 * oracle::hyperbolic_r(0.5)));
  CHECK(sphere_model(4.0).r_of_rho(3.0) == doctest::Approx(0.5 * oracle::sphere_r(3.0)));
}

TEST_CASE("numeric quadrature agrees with closed forms") {
  // 1 + rho^2 integrates to rho + rho^3 / 3
  const auto m = conformal_poly_model({1.0, 1.0});
  for (double rho : {0.2, 1.0, 2.5}) CHECK(m.r_of_rho(rho) == doctest::Approx(rho + rho * rho * rho / 3).epsilon(1e-12));
  for (double r : {0.3, 1.0, 4.0}) CHECK(m.r_of_rho(m.rho_of_r(r)) == doctest::Approx(r).epsilon(1e-10));

  std::vector<double> rho, lam;
  for (int i = 0; i <= 400; ++i) {
    rho.push_back(0.01 * i);
    lam.push_back(1.0 / std::sqrt(1.0 + rho.back() * rho.back()));
  }
  const auto tab = custom_model(profile_from_table(rho, lam));
  for (double x : {0.3, 1.7, 3.5}) CHECK(tab.r_of_rho(x) == doctest::Approx(oracle::cigar_r(x)).epsilon(1e-7));
}

TEST_CASE("compact and bounded domains") {
  CHECK(sphere_model().compact());
  CHECK(sphere_model().r_max() == doctest::Approx(std::numbers::pi));
  CHECK_FALSE(hyperbolic_model().compact());
  CHECK(hyperbolic_model().r_max() == kInfinity);
  CHECK(flat_model().r_max() == kInfinity);
}

TEST_CASE("radial curvature of the built-in models") {
  for (double r : {0.05, 0.5, 2.0, 5.0}) {
    CHECK(radial_curvature(flat_model(), r) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(radial_curvature(hyperbolic_model(), r) == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(radial_curvature(hyperbolic_model(2.5), r) == doctest::Approx(-2.5).epsilon(1e-7));
    CHECK(radial_curvature(cigar_model(), r) == doctest::Approx(2.0 / std::pow(std::cosh(r), 2)).epsilon(1e-7));
  }
  for (double r : {0.05, 1.0, 3.0}) CHECK(radial_curvature(sphere_model(), r) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("curvature agrees with a planar stencil of log lambda") {
  const auto m = conformal_poly_model({1.0, 1.0, 0.5});
  auto lambda = [](double x) { return 1.0 + x * x + 0.5 * x * x * x * x; };
  for (double rho : {0.2, 0.7, 1.3}) {
    const double expected = oracle::stencil_curvature(lambda, rho * 0.6, rho * 0.8);
    CHECK(radial_curvature(m, m.r_of_rho(rho)) == doctest::Approx(expected).epsilon(1e-5));
  }
  // 1 + rho^2 has H(0) = -4
  CHECK(radial_curvature(conformal_poly_model({1.0, 1.0}), 1e-3) == doctest::Approx(-4.0).epsilon(1e-4));
}

TEST_CASE("distance Hessian matches J'/(2J)") {
  for (double r : {0.1, 1.0, 3.0}) {
    CHECK(model_hessian(flat_model(), r) == doctest::Approx(0.5 / r));
    CHECK(model_hessian(hyperbolic_model(), r) == doctest::Approx(0.5 / std::tanh(r)).epsilon(1e-9));
    CHECK(model_hessian(sphere_model(), r) == doctest::Approx(0.5 / std::tan(r)).epsilon(1e-9));
    CHECK(model_hessian(cigar_model(), r) == doctest::Approx(1.0 / std::sinh(2.0 * r)).epsilon(1e-9));
  }
}

TEST_CASE("potential models reproduce the flat metric") {
  const auto m = model_from_potential(1, [](double) { return 1.0; }, [](double) { return 0.0; });
  for (double rho : {0.1, 1.0, 10.0}) CHECK(m.r_of_rho(rho) == doctest::Approx(rho).epsilon(1e-10));
}

TEST_CASE("profile tables round trip through disk") {
  const auto dir = std::filesystem::temp_directory_path() / "hadamard_profile_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "flat.txt").string();
  {
    std::ofstream os(path);
    os << "# rho lambda\n";
    for (int i = 0; i <= 50; ++i) os << 0.1 * i << ' ' << 2.0 << '\n';
  }
  const auto m = custom_model(load_profile_table(path));
  CHECK(m.r_of_rho(3.0) == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(radial_curvature(m, 1.0) == doctest::Approx(0.0).epsilon(1e-8));
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid models and domains are rejected") {
  CHECK_THROWS_AS(hyperbolic_model(0.0), LabError);
  CHECK_THROWS_AS(sphere_model(-1.0), LabError);
  CHECK_THROWS_AS(conformal_poly_model({1.0, -1.0}), LabError);
  CHECK_THROWS_AS(conformal_poly_model({0.0, 1.0}), LabError);
  CHECK_THROWS_AS(load_profile_table("/nonexistent/profile.txt"), LabError);
  CHECK_THROWS_AS(profile_from_table({0.0, 1.0}, {1.0, -1.0}), LabError);
  CHECK_THROWS_AS(builtin_model(ModelSpec{.tag = "torus"}), LabError);
  CHECK_THROWS_AS(radial_curvature(sphere_model(), 4.0), LabError);
  CHECK_THROWS_AS(radial_curvature(flat_model(), 0.0), LabError);
}
