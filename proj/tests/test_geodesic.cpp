#include "oracles.hpp"

#include "hadamard/error.hpp"
#include "hadamard/radial_metric.hpp"

#include <doctest.h>

#include <random>

using namespace hadamard;
using C = std::complex<double>;

namespace {

C random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace

TEST_CASE("shooting distance matches the Poincare disc") {
  std::mt19937_64 rng(7);
  for (double kappa : {1.0, 3.0}) {
    const auto m = hyperbolic_model(kappa);
    for (int i = 0; i < 20; ++i) {
      const C p = random_point(rng, 0.7), q = random_point(rng, 0.7);
      CHECK(geodesic_distance(m, p, q) == doctest::Approx(oracle::hyperbolic_distance(p, q, kappa)).epsilon(1e-7));
    }
  }
}

TEST_CASE("shooting distance matches the round sphere on a hemisphere") {
  std::mt19937_64 rng(11);
  const auto m = sphere_model();
  for (int i = 0; i < 20; ++i) {
    const C p = random_point(rng, 0.9), q = random_point(rng, 0.9);
    CHECK(geodesic_distance(m, p, q) == doctest::Approx(oracle::sphere_distance(p, q)).epsilon(1e-7));
  }
}

TEST_CASE("flat and cigar distances") {
  CHECK(geodesic_distance(flat_model(), C(0.3, 0.1), C(-1.0, 2.0)) == doctest::Approx(std::abs(C(1.3, -1.9))));
  const auto cigar = cigar_model();
  // radial segments are geodesics
  CHECK(geodesic_distance(cigar, C(0.5, 0.0), C(2.0, 0.0)) ==
        doctest::Approx(oracle::cigar_r(2.0) - oracle::cigar_r(0.5)).epsilon(1e-8));
  CHECK(geodesic_distance(cigar, C(0.0, 0.0), C(0.0, 1.5)) == doctest::Approx(oracle::cigar_r(1.5)).epsilon(1e-8));
}

TEST_CASE("exp map from the origin moves along rays") {
  const auto m = hyperbolic_model();
  const C q = exp_map(m, 0.0, 0.7, 1.2);
  CHECK(std::abs(q) == doctest::Approx(m.rho_of_r(1.2)).epsilon(1e-9));
  CHECK(std::arg(q) == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("geodesic circles agree with single exp map calls") {
  const auto m = cigar_model();
  const C p(0.4, -0.2);
  const std::vector<double> radii = {0.3, 0.8}, angles = {0.0, 1.0, 2.5};
  const auto grid = geodesic_circles(m, p, radii, angles);
  REQUIRE(grid.size() == 2);
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = 0; j < angles.size(); ++j)
      CHECK(std::abs(grid[i][j] - exp_map(m, p, angles[j], radii[i])) < 1e-8);
}

TEST_CASE("points outside the chart are rejected") {
  CHECK_THROWS_AS(geodesic_distance(hyperbolic_model(), C(0.2, 0.0), C(1.2, 0.0)), LabError);
}
