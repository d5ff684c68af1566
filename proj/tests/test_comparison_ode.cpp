#include "hadamard/comparison_ode.hpp"
#include "hadamard/error.hpp"
#include "hadamard/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace hadamard;

namespace {

double worst_riccati(const Supersolution& u, const CurvatureLowerBound& g, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double r : grid) worst = std::max(worst, std::abs(u.residual(r, g)));
  return worst;
}

}  // namespace

TEST_CASE("catalog supersolutions solve the Riccati equality") {
  const auto grid = log_grid(1e-3, 3.0, 200);
  for (const std::string tag : {"nonneg", "lower_bound_minus_one", "lower_bound_plus_one", "cigar"}) {
    CAPTURE(tag);
    const auto u = closed_form_supersolution(tag);
    const auto g = closed_form_bound(tag);
    CHECK(worst_riccati(u, g, grid) <= 1e-9);
    CHECK(u.normalization_residual() <= 1e-7);
    const auto h = closed_form_convexifier(tag);
    for (double r : grid) CHECK(std::abs(convexifier_residual(h, u, r)) <= 1e-8 * std::max(1.0, std::abs(h.h_prime(r))));
  }
}

TEST_CASE("kappa rescales the constant-curvature entries") {
  CatalogParams p;
  p.kappa = 4.0;
  const auto u = closed_form_supersolution("lower_bound_minus_one", p);
  CHECK(u.u(1.0) == doctest::Approx(1.0 / std::tanh(2.0)));
  CHECK(closed_form_bound("lower_bound_minus_one", p)(1.0) == doctest::Approx(-4.0));
  CHECK(closed_form_bound("lower_bound_plus_one", p)(1.0) == doctest::Approx(4.0));
}

TEST_CASE("numeric Riccati equality reproduces constant curvature") {
  const auto flat = solve_riccati_equality(CurvatureLowerBound::constant(0.0));
  const auto hyp = solve_riccati_equality(CurvatureLowerBound::constant(-1.0));
  for (double r : {1e-3, 0.1, 1.0, 5.0, 30.0}) {
    CHECK(flat.u(r) == doctest::Approx(0.5 / r).epsilon(1e-8));
    CHECK(hyp.u(r) == doctest::Approx(0.5 / std::tanh(r)).epsilon(1e-8));
  }
  CHECK_FALSE(hyp.blow_down.has_value());
}

TEST_CASE("positive curvature blows down at the conjugate radius") {
  const auto sph = solve_riccati_equality(CurvatureLowerBound::constant(1.0));
  REQUIRE(sph.blow_down.has_value());
  CHECK(*sph.blow_down == doctest::Approx(std::numbers::pi).epsilon(1e-5));
  CHECK(sph.u(2.0) == doctest::Approx(0.5 / std::tan(2.0)).epsilon(1e-7));
  RiccatiOptions strict;
  strict.allow_blow_down = false;
  CHECK_THROWS_AS(solve_riccati_equality(CurvatureLowerBound::constant(1.0), strict), LabError);
}

TEST_CASE("the Riccati solver stays accurate far out") {
  RiccatiOptions o;
  o.r_end = 1e4;
  const auto u = solve_riccati_equality(CurvatureLowerBound::cigar(), o);
  const auto h = solve_convexifier(u, {.r_end = 1e4});
  for (double r : {10.0, 100.0, 1000.0, 9000.0}) {
    CHECK(std::abs(u.w(r) - 2.0 * r / std::sinh(2.0 * std::min(r, 300.0))) <= 1e-8 * r);
    CHECK(std::abs(h.h_prime(r) - 1.0 / std::tanh(r)) <= 1e-7);
  }
}

TEST_CASE("numeric convexifier of 1/(2r) is log r") {
  const auto h = solve_convexifier(closed_form_supersolution("nonneg"));
  for (double r : {1e-3, 1.0, 50.0}) {
    CHECK(h.normalized(r) == doctest::Approx(std::log(r)).epsilon(1e-9));
    CHECK(h.h_prime(r) == doctest::Approx(1.0 / r).epsilon(1e-9));
  }
  CHECK(h.normalization_limit <= 1e-8);
}

TEST_CASE("power-decay entry is a strict supersolution") {
  for (auto [A, eps] : {std::pair{0.05, 0.49}, {1.0, 0.4}, {2.0, 0.25}}) {
    CatalogParams p;
    p.A = A;
    p.eps = eps;
    const auto rep = verify_supersolution(closed_form_supersolution("power_decay", p),
                                          CurvatureLowerBound::power_decay(A, eps), log_grid(1e-3, 50.0, 500));
    CHECK(rep.pass);
    CHECK(rep.min_residual >= 0.0);
  }
}

TEST_CASE("a supersolution for a weaker bound fails against a stronger one") {
  // 1/(2r) is only good for nonnegative curvature
  const auto rep = verify_supersolution(closed_form_supersolution("nonneg"), CurvatureLowerBound::constant(-1.0),
                                        log_grid(0.1, 5.0, 20));
  CHECK_FALSE(rep.pass);
  CHECK(rep.min_residual == doctest::Approx(-0.5));
}

TEST_CASE("inverse-square supersolution") {
  const double C = 0.18, B = 2.0;
  const auto u = inverse_square_supersolution(C, B);
  const double r0 = u.r_min * 1.5;
  const auto rep = verify_supersolution(u, CurvatureLowerBound::inverse_square(C, r0), log_grid(r0, 100.0, 200));
  CHECK(rep.pass);
  CHECK_THROWS_AS(inverse_square_supersolution(0.3, 1.0), LabError);
  CHECK_THROWS_AS(CurvatureLowerBound::inverse_square(0.1, 0.0), LabError);
  CHECK_THROWS_AS(solve_riccati_equality(CurvatureLowerBound::inverse_square(0.1, 1.0)), LabError);
}

TEST_CASE("growth exponent separates logarithmic from faster growth") {
  CHECK(growth_exponent(closed_form_convexifier("nonneg"), 10.0, 1e4) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::isinf(growth_exponent(closed_form_convexifier("cigar"), 10.0, 1e3)));
  CHECK_THROWS_AS(growth_exponent(closed_form_convexifier("nonneg"), 0.5, 10.0), LabError);
}

TEST_CASE("verification grids must be increasing and inside the domain") {
  const auto u = closed_form_supersolution("lower_bound_plus_one");
  const auto g = closed_form_bound("lower_bound_plus_one");
  CHECK_THROWS_AS(verify_supersolution(u, g, std::vector<double>{1.0, 0.5}), LabError);
  CHECK_THROWS_AS(verify_supersolution(u, g, std::vector<double>{1.0, 4.0}), LabError);
}

TEST_CASE("sample files carry a header") {
  std::ostringstream os;
  const std::vector<double> grid = {1.0, 2.0};
  write_samples(os, [](double r) { return r * r; }, grid, "sq");
  const std::string s = os.str();
  CHECK(s.rfind("# r sq\n", 0) == 0);
  CHECK(s.find("4") != std::string::npos);
}
