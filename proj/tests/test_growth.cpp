#include "oracles.hpp"

#include "hadamard/error.hpp"
#include "hadamard/growth.hpp"
#include "hadamard/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace hadamard;

namespace {

Eigen::VectorXcd at(Complex c) {
  Eigen::VectorXcd v(1);
  v[0] = c;
  return v;
}

}  // namespace

TEST_CASE("maximal modulus of monomials about the origin") {
  const auto f = parse_holo_poly("z^3");
  for (double r : {0.1, 1.0, 7.0}) CHECK(max_modulus(flat_model(), f, {}, r) == doctest::Approx(r * r * r));
  const auto hyp = hyperbolic_model();
  for (double r : {0.5, 2.0}) CHECK(max_modulus(hyp, parse_holo_poly("z"), {}, r) == doctest::Approx(std::tanh(r / 2)));
  const auto sph = sphere_model();
  CHECK(max_modulus(sph, parse_holo_poly("2z^2"), {}, 1.0) == doctest::Approx(2.0 * std::pow(std::tan(0.5), 2)));
}

TEST_CASE("maximal modulus in several variables") {
  // |z1 z2| on |z| <= r peaks at |z1| = |z2| = r / sqrt 2
  const auto f = parse_holo_poly("z1*z2");
  CHECK(max_modulus(flat_model(2), f, {}, 2.0) == doctest::Approx(2.0).epsilon(1e-7));
  const auto g = parse_holo_poly("z1 + z2 + z3");
  CHECK(max_modulus(flat_model(3), g, {}, 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("off-center balls on the plane match the circle oracle") {
  const auto f = parse_holo_poly("z^3 - (1+i)z + 0.5");
  const std::vector<Complex> coeffs = {0.5, Complex(-1, -1), 0.0, 1.0};
  for (auto [c, R] : {std::pair{Complex(0.3, -0.2), 0.7}, {Complex(-0.5, 0.5), 1.5}}) {
    const double expected = oracle::circle_max(coeffs, c, R);
    CHECK(max_modulus(flat_model(), f, at(c), R) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("off-center balls need one variable") {
  Eigen::VectorXcd c(2);
  c << 0.1, 0.0;
  CHECK_THROWS_AS(max_modulus(flat_model(2), parse_holo_poly("z1"), c, 1.0), LabError);
  CHECK_THROWS_AS(max_modulus(sphere_model(), parse_holo_poly("z"), {}, 3.5), LabError);
}

TEST_CASE("three-circle check on the plane and the disc") {
  const auto logr = closed_form_convexifier("nonneg");
  const auto flat = growth_curve(flat_model(), parse_holo_poly("z^2 + 3z + 1"), {}, log_grid(0.1, 10.0, 12));
  CHECK(three_circle_check(flat, logr).pass);
  const auto hyp = growth_curve(hyperbolic_model(), parse_holo_poly("z"), {}, {0.5, 1.0, 1.5});
  const auto rep = three_circle_check(hyp, logr);
  CHECK_FALSE(rep.pass);
  CHECK(rep.min_second_difference < -1e-3);
  REQUIRE(rep.second_differences.size() == 1);
}

TEST_CASE("monotonicity of log M - d h") {
  const auto logr = closed_form_convexifier("nonneg");
  const auto curve = growth_curve(flat_model(), parse_holo_poly("z^2 + z"), {}, log_grid(0.1, 100.0, 15));
  CHECK(monotonicity_check(curve, logr, 2.0, Direction::nonincreasing).pass);
  CHECK(monotonicity_check(curve, logr, 1.0, Direction::nondecreasing).pass);
  CHECK_FALSE(monotonicity_check(curve, logr, 1.0, Direction::nonincreasing).pass);
  CHECK_FALSE(monotonicity_check(curve, logr, 2.0, Direction::nondecreasing).pass);
}

TEST_CASE("order at infinity") {
  const auto curve = growth_curve(flat_model(), parse_holo_poly("z^3 + 5z"), {}, log_grid(1e2, 1e4, 21));
  CHECK(order_at_infinity(curve) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("small-radius deficit tracks H(0)/12") {
  struct Case {
    RadialKahlerModel model;
    double H0;
    double lambda0;
  };
  for (const auto& c : {Case{sphere_model(), 1.0, 2.0}, Case{cigar_model(), 2.0, 1.0}, Case{hyperbolic_model(), -1.0, 2.0},
                        Case{conformal_poly_model({1.0, 1.0}), -4.0, 1.0}}) {
    CAPTURE(c.model.name());
    const auto fit = necessity_deficit(c.model, default_deficit_grid(c.model));
    CHECK(fit.predicted == doctest::Approx(c.H0 / 12.0).epsilon(1e-4));
    CHECK(fit.c2 == doctest::Approx(c.H0 / 12.0).epsilon(0.05));
    CHECK(fit.limit == doctest::Approx(1.0 / c.lambda0).epsilon(1e-6));
  }
}

TEST_CASE("asymptotic homogeneity decays") {
  HomogeneityOptions opt;
  opt.d_override = 2.0;
  const auto f = parse_holo_poly("z^2 + z");
  const double a = homogeneity_check(flat_model(), f, 2.0, 1e2, opt).value;
  const double b = homogeneity_check(flat_model(), f, 2.0, 1e3, opt).value;
  CHECK(a <= 0.05);
  CHECK(b < a);
  CHECK(homogeneity_check(flat_model(), parse_holo_poly("z^2"), 2.0, 10.0, opt).value <= 1e-9);
}

TEST_CASE("cone exponents") {
  CHECK(cone_exponent(0.0, 4) == 0.0);
  CHECK(cone_exponent(separation_eigenvalue(3.0, 4), 4) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(separation_eigenvalue(2.0, 2) == 4.0);
  CHECK_THROWS_AS(cone_exponent(-1.0, 2), LabError);
  CHECK_THROWS_AS(separation_eigenvalue(1.0, 1), LabError);
}

TEST_CASE("curve CSV layout") {
  const auto curve = growth_curve(flat_model(), parse_holo_poly("z"), {}, {1.0, 2.0, 4.0});
  const auto h = closed_form_convexifier("nonneg");
  const auto rep = three_circle_check(curve, h);
  std::ostringstream os;
  write_curve_csv(os, curve, &h, &rep);
  const std::string s = os.str();
  CHECK(s.rfind("r,h,M,logM,second_difference\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
