#pragma once

// Comparison ODEs for the radial complex Hessian of the distance function.
//
// A supersolution u(r) satisfies u' + 2u^2 + g/2 >= 0 with 2 u(r) r -> 1 at
// the origin, where g bounds the radial holomorphic sectional curvature from
// below. A convexifier h(r) solves h''/2 + h' u = 0 with e^h / r -> 1; the
// maximal modulus of any holomorphic function is log-convex in h.
//
// Supersolutions are stored through w(r) = 2 r u(r), which stays O(1) at the
// origin and keeps residual evaluation free of the 1/r^2 cancellation.

#include "hadamard/radial_metric.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hadamard {

struct CurvatureLowerBound {
  enum class Kind { constant, power_decay, inverse_square, cigar, custom };

  Kind kind = Kind::custom;
  std::string name;
  RealFn g;
  double c = 0.0;    // constant
  double A = 0.0;    // power_decay
  double eps = 0.0;  // power_decay
  double C = 0.0;    // inverse_square
  double r_min = 0.0;  // the bound is only asserted for r >= r_min
  double r_max = kInfinity;

  double operator()(double r) const { return g(r); }

  static CurvatureLowerBound constant(double c);
  /// g = -A / (1 + r)^(2 + eps)
  static CurvatureLowerBound power_decay(double A, double eps);
  /// g = C / r^2 for r >= r0, 0 < C < 1/4
  static CurvatureLowerBound inverse_square(double C, double r0);
  /// g = 2 / cosh^2 r
  static CurvatureLowerBound cigar();
  static CurvatureLowerBound custom(std::string name, RealFn g, double r_max = kInfinity);
};

/// The radial curvature of a model used as its own (sharp) lower bound.
CurvatureLowerBound curvature_bound_of(const RadialKahlerModel& model);

struct Supersolution {
  std::string name;
  RealFn w;   // w(r) = 2 r u(r)
  RealFn dw;  // may be empty; Richardson differences are used then
  // Optional regular form v = (1 - w) / r^2 and its derivative. When present
  // the residual is evaluated as (g - 3v - r v' + r^2 v^2) / 2.
  RealFn v;
  RealFn dv;
  double r_min = 0.0;
  double r_max = kInfinity;
  bool origin_normalized = false;
  std::optional<double> blow_down;

  double u(double r) const { return w(r) / (2.0 * r); }
  /// |2 u(r0) r0 - 1| at r0 = 1e-4.
  double normalization_residual() const { return std::abs(w(1e-4) - 1.0); }
  double dw_at(double r) const;
  double du(double r) const { return (dw_at(r) - w(r) / r) / (2.0 * r); }
  /// u' + 2u^2 + g/2 at r.
  double residual(double r, const CurvatureLowerBound& g) const;
};

struct RiccatiOptions {
  double r_start = 1e-6;
  double r_end = 60.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  bool allow_blow_down = true;
};

/// Solves u' + 2u^2 + g/2 = 0 with 2 u r -> 1 through the regular problem
/// v' = (g - 3v + r^2 v^2) / r, v(0) = g(0)/3, where 2 r u = 1 - r^2 v.
/// Integration stops where u diverges to minus infinity; that radius is
/// recorded in `blow_down`.
Supersolution solve_riccati_equality(const CurvatureLowerBound& g, const RiccatiOptions& opt = {});

struct ResidualReport {
  double min_residual = 0.0;
  double argmin = 0.0;
  double max_abs_residual = 0.0;
  double tolerance = 1e-8;
  std::size_t samples = 0;
  bool pass = false;
};

ResidualReport verify_supersolution(const Supersolution& u, const CurvatureLowerBound& g,
                                    std::span<const double> grid, double tol = 1e-8);

struct Convexifier {
  std::string name;
  RealFn h;         // stated form
  RealFn h_prime;
  RealFn h_second;  // may be empty
  double normalization_offset = 0.0;  // h + offset satisfies e^h / r -> 1
  double normalization_residual = 0.0;  // |e^h(r0) / r0 - 1| at r0 = 1e-4, normalized h
  double normalization_limit = 0.0;     // |lim log(e^h / r)|, extrapolated
  double r_max = kInfinity;

  double normalized(double r) const { return h(r) + normalization_offset; }
};

struct ConvexifierOptions {
  double r_start = 1e-6;
  double r_end = 1e6;  // clipped to the supersolution's domain
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// h' = exp(-2 int u) normalized so that r h' -> 1; the logarithmic part of
/// h is carried analytically, h = log r + int_0^r (r h' - 1) / t dt.
Convexifier solve_convexifier(const Supersolution& u, const ConvexifierOptions& opt = {});

/// h''/2 + h' u at r.
double convexifier_residual(const Convexifier& h, const Supersolution& u, double r);

/// Catalog of closed forms. Tags: nonneg, lower_bound_minus_one,
/// lower_bound_plus_one, cigar, power_decay. `kappa` rescales the two
/// constant-curvature entries (bound -kappa or +kappa).
struct CatalogParams {
  double kappa = 1.0;
  double A = 0.0;
  double eps = 0.0;
};

Convexifier closed_form_convexifier(const std::string& tag, const CatalogParams& params = {});
Supersolution closed_form_supersolution(const std::string& tag, const CatalogParams& params = {});
CurvatureLowerBound closed_form_bound(const std::string& tag, const CatalogParams& params = {});
const std::vector<std::string>& catalog_tags();

/// u = (a B r^k - b) / (r (B r^k - 1)) with a > 1/4 > b the roots of
/// 2x^2 - x + C/2 = 0 and k = 2a - 2b; defined for B r^k > 1.
Supersolution inverse_square_supersolution(double C, double B);

/// Least-squares slope of h against log r on [r_lo, r_hi], r_hi >= 4 r_lo;
/// +infinity when the slope still grows by more than 10% across the window.
double growth_exponent(const Convexifier& h, double r_lo, double r_hi);

/// Two-column plain-text samples with header `# r <label>`.
void write_samples(std::ostream& os, const RealFn& f, std::span<const double> grid,
                   const std::string& label = "value");

}  // namespace hadamard
