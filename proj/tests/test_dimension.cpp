#include "oracles.hpp"

#include "hadamard/dimension.hpp"
#include "hadamard/error.hpp"

#include <doctest.h>

using namespace hadamard;

TEST_CASE("dim_poly_space counts monomials") {
  for (int n = 1; n <= 4; ++n)
    for (int D = 0; D <= 10; ++D) {
      CHECK(dim_poly_space(n, D).count == oracle::count_monomials(n, D));
      CHECK(dim_poly_space(n, D + 0.99).count == oracle::count_monomials(n, D));
    }
  CHECK(dim_poly_space(2, 0.5).count == 1);
  CHECK(dim_poly_space(3, kInfinity).infinite);
  CHECK(dim_poly_space(3, kInfinity).str() == "inf");
  CHECK_THROWS_AS(dim_poly_space(0, 1.0), LabError);
  CHECK_THROWS_AS(dim_poly_space(1, -1.0), LabError);
}

TEST_CASE("huge counts saturate to the overflow tag") {
  CHECK(dim_poly_space(40, 1e6).infinite);
  CHECK_FALSE(dim_poly_space(2, 1e6).infinite);
  CHECK(dim_poly_space(2, 1e6).count == 500001500001ULL);
}

TEST_CASE("power-decay regimes") {
  const auto trivial = power_decay_regimes(0.05, 0.49, 0.7, 3);
  CHECK(trivial.trivial);
  CHECK(trivial.bound.count == 1);

  for (int n = 1; n <= 4; ++n) {
    const auto sharp = power_decay_regimes(0.05, 0.4, 2.0, n);
    CHECK(sharp.sharp);
    CHECK(sharp.witness);
    CHECK(sharp.bound.count == oracle::count_monomials(n, 2));
  }

  const auto general = power_decay_regimes(1.0, 0.4, 2.0, 2);
  CHECK(general.regime == "general");
  CHECK(general.d_eff == doctest::Approx(2.0 * std::exp(5.0)));
  CHECK(general.bound == dim_poly_space(2, general.d_eff));
  CHECK_THROWS_AS(power_decay_regimes(1.0, 0.5, 2.0, 2), LabError);
}

TEST_CASE("inverse-square roots") {
  const auto roots = inverse_square_roots(0.18);
  CHECK(roots.a == doctest::Approx(0.38229).epsilon(1e-5));
  CHECK(roots.b == doctest::Approx(0.11771).epsilon(1e-4));
  for (double x : {roots.a, roots.b}) CHECK(std::abs(2 * x * x - x + 0.09) <= 1e-12);
  CHECK(roots.A == doctest::Approx(1.0 - 2.0 * roots.a));
  CHECK(roots.k == doctest::Approx(2.0 * (roots.a - roots.b)));
  CHECK_THROWS_AS(inverse_square_roots(0.25), LabError);
}

TEST_CASE("exponential class bound") {
  const auto rep = exp_growth_bound(0.18, 3.0, 2, 1.5);
  CHECK(rep.bound.d_eff == doctest::Approx(2.0));
  CHECK(rep.bound.bound.count == 6);
}

TEST_CASE("bounds from a convexifier") {
  const auto euclid = dim_bound_from_h(closed_form_convexifier("nonneg"), 3.0, 2);
  CHECK(euclid.regime == "euclidean_exact");
  CHECK(euclid.bound.count == 10);

  const auto cigar = dim_bound_from_h(closed_form_convexifier("cigar"), 3.0, 2);
  CHECK(cigar.regime == "exp_growth");
  CHECK(cigar.exp_A == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cigar.bound.count == 10);

  CatalogParams p;
  p.A = 0.05;
  p.eps = 0.49;
  const auto pd = dim_bound_from_h(closed_form_convexifier("power_decay", p), 2.0, 2);
  // r h' -> exp(-2A/eps)
  CHECK(pd.gamma == doctest::Approx(std::exp(-2.0 * 0.05 / 0.49)).epsilon(1e-3));
  CHECK(pd.bound == dim_poly_space(2, 2.0 / pd.gamma));

  CHECK_THROWS_AS(dim_bound_from_h(closed_form_convexifier("lower_bound_minus_one"), 2.0, 1), LabError);
}
