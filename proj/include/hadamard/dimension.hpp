#pragma once

// Dimension counting for spaces of polynomial-growth holomorphic functions.

#include "hadamard/comparison_ode.hpp"

#include <cstdint>
#include <string>

namespace hadamard {

/// A nonnegative count or the +infinity / overflow tag.
struct DimValue {
  std::uint64_t count = 0;
  bool infinite = false;

  std::string str() const { return infinite ? "inf" : std::to_string(count); }
  bool operator==(const DimValue&) const = default;
};

/// binomial(n + floor(d), n): monomials of total degree <= floor(d) in n variables.
DimValue dim_poly_space(int n, double d);

struct DimensionBound {
  int n = 1;
  double d = 0.0;
  DimValue bound;
  std::string regime;  // euclidean_exact | h_growth | power_decay | exp_growth
  double d_eff = 0.0;
  double gamma = 0.0;   // growth exponent of h (h_growth)
  double exp_A = 0.0;   // h ~ c1 r^A (exp_growth)
  double c1 = 0.0;
  std::string derivation;
};

struct GrowthWindow {
  double lo = 1e4;
  double hi = 1e6;
};

/// Vanishing-order bound from the growth of h: d_eff = d / gamma. When h is
/// superlogarithmic the exponential class is used, with h ~ c1 r^A fitted on
/// the window.
DimensionBound dim_bound_from_h(const Convexifier& h, double d, int n, GrowthWindow window = {});

struct PowerDecayReport {
  double A = 0.0, eps = 0.0, d = 0.0;
  int n = 1;
  bool trivial = false;      // d <= e^{-3A/eps}
  bool sharp = false;        // d integer and A/eps <= 1/(4d)
  double d_eff = 0.0;        // d e^{2A/eps}
  bool witness = false;      // d e^{2A/eps} < floor(d) + 1
  DimValue general_bound;    // dim_poly_space(n, d e^{2A/eps})
  DimValue bound;            // the reported bound
  std::string regime;        // trivial | sharp | general
};

PowerDecayReport power_decay_regimes(double A, double eps, double d, int n);

/// Roots a > 1/4 > b of 2x^2 - x + C/2 = 0 and the derived A = 1 - 2a, k = 2a - 2b.
struct InverseSquareRoots {
  double a = 0.0, b = 0.0, A = 0.0, k = 0.0;
};

InverseSquareRoots inverse_square_roots(double C);

struct ExpGrowthReport {
  InverseSquareRoots roots;
  double C = 0.0, d = 0.0, c1 = 0.0;
  int n = 1;
  DimensionBound bound;
};

ExpGrowthReport exp_growth_bound(double C, double d, int n, double c1);

}  // namespace hadamard
