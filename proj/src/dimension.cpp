#include "hadamard/dimension.hpp"

#include "hadamard/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace hadamard {

namespace {

// Floors that sit within this of an integer are rounded up, so a growth
// exponent fitted slightly above its true value cannot lose a degree.
constexpr double kFloorSlack = 1e-9;

// fitted exponents from a numeric h carry quadrature and regression error
constexpr double kFitSlack = 1e-6;

double conservative(double d_eff, double slack = kFloorSlack) { return d_eff + slack * std::max(1.0, d_eff); }

}  // namespace

DimValue dim_poly_space(int n, double d) {
  if (n < 1) throw LabError(ErrorKind::invalid_argument, "n must be >= 1");
  if (!(d >= 0.0)) throw LabError(ErrorKind::invalid_argument, "d must be >= 0");
  if (!std::isfinite(d) || d >= 9.0e18) return {0, true};
  const auto D = static_cast<std::uint64_t>(std::floor(d));
  const std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(n), D);
  const std::uint64_t top = static_cast<std::uint64_t>(n) + D;
  // binomial(top, k) = prod_{i=1..k} (top - k + i) / i, exact at every step.
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (top - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return {0, true};
  }
  return {static_cast<std::uint64_t>(acc), false};
}

DimensionBound dim_bound_from_h(const Convexifier& h, double d, int n, GrowthWindow window) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw LabError(ErrorKind::invalid_argument, "d must be finite and >= 0");
  if (n < 1) throw LabError(ErrorKind::invalid_argument, "n must be >= 1");
  double hi = std::min(window.hi, h.r_max);
  double lo = std::min(window.lo, hi / 10.0);
  DimensionBound out;
  out.n = n;
  out.d = d;
  const double gamma = growth_exponent(h, lo, hi);
  out.gamma = gamma;
  if (std::isinf(gamma)) {
    // h ~ c1 r^A: fit log h' = log(c1 A) + (A - 1) log r on the window.
    constexpr int kSamples = 32;
    Eigen::MatrixXd X(kSamples, 2);
    Eigen::VectorXd y(kSamples);
    for (int i = 0; i < kSamples; ++i) {
      const double r = lo * std::pow(hi / lo, static_cast<double>(i) / (kSamples - 1));
      X(i, 0) = 1.0;
      X(i, 1) = std::log(r);
      y[i] = std::log(h.h_prime(r));
    }
    const Eigen::Vector2d beta = X.colPivHouseholderQr().solve(y);
    out.exp_A = beta[1] + 1.0;
    out.c1 = std::exp(beta[0]) / out.exp_A;
    if (!(out.exp_A > 0.0) || !(out.c1 > 0.0))
      throw LabError(ErrorKind::convergence_failure, "could not fit h ~ c1 r^A on the growth window");
    out.regime = "exp_growth";
    out.d_eff = d / out.c1;
    out.bound = dim_poly_space(n, conservative(out.d_eff, kFitSlack));
    out.derivation = "h superlogarithmic: h ~ c1 r^A with A = " + std::to_string(out.exp_A) +
                     ", c1 = " + std::to_string(out.c1) + "; bound dim O_{d/c1}(C^n)";
    return out;
  }
  if (!(gamma > 0.0)) throw LabError(ErrorKind::convergence_failure, "growth exponent of h is not positive");
  out.d_eff = d / gamma;
  out.bound = dim_poly_space(n, conservative(out.d_eff, kFitSlack));
  out.regime = std::abs(gamma - 1.0) <= 1e-9 ? "euclidean_exact" : "h_growth";
  out.derivation = "gamma = " + std::to_string(gamma) + " on [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]; d_eff = d / gamma";
  return out;
}

PowerDecayReport power_decay_regimes(double A, double eps, double d, int n) {
  if (!(A > 0.0) || !(eps > 0.0) || !(d > 0.0))
    throw LabError(ErrorKind::invalid_argument, "A, eps and d must be positive");
  if (!(eps < 0.5)) throw LabError(ErrorKind::invalid_argument, "eps must be < 1/2");
  if (n < 1) throw LabError(ErrorKind::invalid_argument, "n must be >= 1");
  PowerDecayReport rep;
  rep.A = A;
  rep.eps = eps;
  rep.d = d;
  rep.n = n;
  const double q = A / eps;
  rep.d_eff = d * std::exp(2.0 * q);
  rep.witness = rep.d_eff < std::floor(d) + 1.0;
  rep.general_bound = dim_poly_space(n, rep.d_eff);
  rep.trivial = d <= std::exp(-3.0 * q);
  const bool integer = d == std::floor(d);
  rep.sharp = integer && q <= 1.0 / (4.0 * d);
  if (rep.trivial) {
    rep.regime = "trivial";
    rep.bound = {1, false};
  } else if (rep.sharp) {
    rep.regime = "sharp";
    rep.bound = dim_poly_space(n, d);
  } else {
    rep.regime = "general";
    rep.bound = rep.general_bound;
  }
  return rep;
}

InverseSquareRoots inverse_square_roots(double C) {
  if (!(C > 0.0 && C < 0.25)) throw LabError(ErrorKind::invalid_argument, "C must lie in (0, 1/4)");
  InverseSquareRoots r;
  r.a = (1.0 + std::sqrt(1.0 - 4.0 * C)) / 4.0;
  r.b = C / (4.0 * r.a);  // product of roots is C/4
  r.A = 1.0 - 2.0 * r.a;
  r.k = 2.0 * r.a - 2.0 * r.b;
  return r;
}

ExpGrowthReport exp_growth_bound(double C, double d, int n, double c1) {
  if (!(d >= 1.0)) throw LabError(ErrorKind::invalid_argument, "d must be >= 1");
  if (!(c1 > 0.0)) throw LabError(ErrorKind::invalid_argument, "c1 must be positive");
  if (n < 1) throw LabError(ErrorKind::invalid_argument, "n must be >= 1");
  ExpGrowthReport rep;
  rep.roots = inverse_square_roots(C);
  rep.C = C;
  rep.d = d;
  rep.c1 = c1;
  rep.n = n;
  rep.bound.n = n;
  rep.bound.d = d;
  rep.bound.regime = "exp_growth";
  rep.bound.exp_A = rep.roots.A;
  rep.bound.c1 = c1;
  rep.bound.d_eff = d / c1;
  rep.bound.bound = dim_poly_space(n, rep.bound.d_eff);
  rep.bound.derivation = "h >= c1 r^A + c2 with A = 1 - 2a; bound dim O_{d/c1}(C^n)";
  return rep;
}

}  // namespace hadamard
