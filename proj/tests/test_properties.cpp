#include "oracles.hpp"

#include "hadamard/dimension.hpp"
#include "hadamard/growth.hpp"
#include "hadamard/radial_metric.hpp"
#include "hadamard/report.hpp"
#include "hadamard/suites.hpp"

#include <doctest.h>

#include <random>

using namespace hadamard;
using Cx = std::complex<double>;

namespace {

constexpr std::uint64_t kSeed = 424242;

Cx random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace

TEST_CASE("exp map and distance invert each other") {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), len(0.05, 1.0);
  for (const auto& m : {hyperbolic_model(), cigar_model(), sphere_model(), conformal_poly_model({1.0, 0.5})}) {
    CAPTURE(m.name());
    for (int i = 0; i < 8; ++i) {
      const Cx p = random_point(rng, 0.4);
      const double L = len(rng);
      const Cx q = exp_map(m, p, angle(rng), L);
      CHECK(geodesic_distance(m, p, q) == doctest::Approx(L).epsilon(1e-6));
    }
  }
}

TEST_CASE("shooting distance satisfies the metric axioms") {
  std::mt19937_64 rng(kSeed + 1);
  for (const auto& m : {hyperbolic_model(), cigar_model()}) {
    CAPTURE(m.name());
    for (int i = 0; i < 6; ++i) {
      const Cx a = random_point(rng, 0.6), b = random_point(rng, 0.6), c = random_point(rng, 0.6);
      const double ab = geodesic_distance(m, a, b), ba = geodesic_distance(m, b, a);
      CHECK(ab == doctest::Approx(ba).epsilon(1e-8));
      CHECK(ab > 0.0);
      CHECK(ab <= geodesic_distance(m, a, c) + geodesic_distance(m, c, b) + 1e-8);
      CHECK(geodesic_distance(m, a, a) <= 1e-12);
      CHECK(std::abs(geodesic_distance(m, 0.0, a) - m.r_of_rho(std::abs(a))) <= 1e-8);
    }
  }
}

TEST_CASE("distance Hessian satisfies the Jacobi-Riccati identity") {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> rr(0.1, 3.0);
  for (const auto& m : {flat_model(), cigar_model(), hyperbolic_model(), sphere_model(),
                        conformal_poly_model({1.0, 1.0})}) {
    CAPTURE(m.name());
    for (int i = 0; i < 10; ++i) {
      const double r = rr(rng), e = 1e-4;
      const double u = model_hessian(m, r);
      const double du = (model_hessian(m, r + e) - model_hessian(m, r - e)) / (2 * e);
      CHECK(std::abs(du + 2 * u * u + radial_curvature(m, r) / 2) <= 1e-5 * (1 + u * u));
    }
  }
}

TEST_CASE("more negative curvature gives a larger Hessian and slower h") {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> c(-2.0, 0.5);
  for (int i = 0; i < 6; ++i) {
    double c1 = c(rng), c2 = c(rng);
    if (c1 > c2) std::swap(c1, c2);
    RiccatiOptions o;
    o.r_end = 2.0;
    const auto u1 = solve_riccati_equality(CurvatureLowerBound::constant(c1), o);
    const auto u2 = solve_riccati_equality(CurvatureLowerBound::constant(c2), o);
    const auto h1 = solve_convexifier(u1), h2 = solve_convexifier(u2);
    for (double r : {0.3, 1.0, 1.9}) {
      CHECK(u1.u(r) >= u2.u(r) - 1e-12);
      CHECK(h1.h_prime(r) <= h2.h_prime(r) + 1e-12);
    }
  }
}

TEST_CASE("sharp monotonicity on the plane for random polynomials") {
  std::mt19937_64 rng(kSeed + 4);
  const auto logr = closed_form_convexifier("nonneg");
  const auto radii = log_grid(0.1, 20.0, 10);
  for (int i = 0; i < 12; ++i) {
    const int n = 1 + i % 2;
    const HoloPoly f = random_polynomial(rng, n, 4);
    CAPTURE(f.to_string());
    const auto curve = growth_curve(flat_model(n), f, {}, radii);
    CHECK(monotonicity_check(curve, logr, f.degree(), Direction::nonincreasing).pass);
    CHECK(monotonicity_check(curve, logr, f.vanishing_order(), Direction::nondecreasing).pass);
    CHECK(three_circle_check(curve, logr).pass);
  }
}

TEST_CASE("three-circle defect is invariant under scaling f") {
  const auto logr = closed_form_convexifier("nonneg");
  const auto radii = log_grid(0.2, 3.0, 7);
  const auto a = three_circle_check(growth_curve(cigar_model(), parse_holo_poly("z^2 + z"), {}, radii), logr);
  const auto b = three_circle_check(growth_curve(cigar_model(), parse_holo_poly("(3-4i)z^2 + (3-4i)z"), {}, radii), logr);
  REQUIRE(a.second_differences.size() == b.second_differences.size());
  for (std::size_t i = 0; i < a.second_differences.size(); ++i)
    CHECK(a.second_differences[i] == doctest::Approx(b.second_differences[i]).epsilon(1e-9));
}

TEST_CASE("dimension counts are monotone in d and n") {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> d(0.0, 12.0);
  for (int i = 0; i < 50; ++i) {
    double a = d(rng), b = d(rng);
    if (a > b) std::swap(a, b);
    for (int n = 1; n <= 4; ++n) {
      CHECK(dim_poly_space(n, a).count <= dim_poly_space(n, b).count);
      CHECK(dim_poly_space(n, a).count <= dim_poly_space(n + 1, a).count);
    }
  }
}

TEST_CASE("power-decay bounds grow with A/eps") {
  for (double A : {0.01, 0.05, 0.2, 1.0}) {
    const auto lo = power_decay_regimes(A, 0.45, 3.0, 2);
    const auto hi = power_decay_regimes(2 * A, 0.45, 3.0, 2);
    CHECK(lo.d_eff < hi.d_eff);
    CHECK(lo.general_bound.count <= hi.general_bound.count);
  }
}

TEST_CASE("cone exponent inverts the separation eigenvalue") {
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> alpha(0.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double a = alpha(rng);
    for (int m : {2, 3, 4, 8}) CHECK(std::abs(cone_exponent(separation_eigenvalue(a, m), m) - a) <= 1e-12 * (1 + a));
  }
}
