#pragma once

// Maximal-modulus growth of holomorphic polynomials on radial model metrics
// and the predicates built on it: log-convexity in a convexifier h, the two
// monotonicity formulas, order at infinity, the small-radius deficit and
// asymptotic homogeneity.

#include "hadamard/comparison_ode.hpp"
#include "hadamard/holo_poly.hpp"
#include "hadamard/radial_metric.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hadamard {

struct MaxModulusOptions {
  int angular_samples = 720;
  int sphere_samples = 2000;  // n >= 2
  int refine_starts = 6;
  std::uint64_t seed = 20240601;
};

struct ModulusSample {
  double log_M = 0.0;
  bool exact = false;
  Eigen::VectorXcd argmax;  // a point where the maximum is attained (numeric samples)
};

/// max |f| over the geodesic ball B(center, r). `center` of size 0 is the
/// origin; off-center balls need n = 1.
double max_modulus(const RadialKahlerModel& model, const HoloPoly& f, const Eigen::VectorXcd& center,
                   double r, const MaxModulusOptions& opt = {});

/// Same, on the log scale, with optional warm-start points for n >= 2.
ModulusSample log_max_modulus(const RadialKahlerModel& model, const HoloPoly& f,
                              const Eigen::VectorXcd& center, double r, const MaxModulusOptions& opt = {},
                              const std::vector<Eigen::VectorXcd>& warm = {});

struct GrowthCurve {
  std::string model_name;
  bool model_compact = false;
  HoloPoly f;
  Eigen::VectorXcd center;
  std::vector<double> radii;
  std::vector<double> log_values;
  std::vector<bool> exact;

  double value(std::size_t i) const;
  std::size_t size() const { return radii.size(); }
};

GrowthCurve growth_curve(const RadialKahlerModel& model, const HoloPoly& f, const Eigen::VectorXcd& center,
                         const std::vector<double>& radii, const MaxModulusOptions& opt = {});

struct ConvexityReport {
  std::vector<double> radii;
  std::vector<double> h_values;
  std::vector<double> log_values;
  std::vector<double> second_differences;  // slope(i+1, i+2) - slope(i, i+1), one per triple
  std::vector<double> scaled_differences;  // divided by max(1, |log M| at the middle radius)
  double min_second_difference = 0.0;
  double min_scaled_difference = 0.0;
  double argmin_r = 0.0;  // middle radius of the worst triple (scaled)
  double tolerance = 1e-6;
  bool pass = false;
};

/// Divided-difference convexity of log M against h. A triple passes when its
/// slope difference is >= -tol * max(1, |log M|).
ConvexityReport three_circle_check(const GrowthCurve& curve, const Convexifier& h, double tol = 1e-6);

enum class Direction { nonincreasing, nondecreasing };

struct MonotonicityReport {
  std::vector<double> radii;
  std::vector<double> ratios;  // log M - d h
  double d = 0.0;
  Direction direction = Direction::nonincreasing;
  double worst_step = 0.0;  // most adverse consecutive change (positive is adverse)
  double argworst_r = 0.0;
  double tolerance = 1e-7;
  bool pass = false;
};

MonotonicityReport monotonicity_check(const GrowthCurve& curve, const Convexifier& h, double d,
                                      Direction direction, double tol = 1e-7);

/// Least-squares slope of log M against log r over the outermost decade;
/// +infinity when it exceeds the previous decade's slope by more than 10%.
double order_at_infinity(const GrowthCurve& curve);

struct DeficitFit {
  double c2 = 0.0;          // M / (c r) = 1 + c2 r^2 + ...
  double limit = 0.0;       // c
  double predicted = 0.0;   // radial curvature at 0+ over 12
  double condition = 0.0;   // of the scaled design matrix
};

/// Fits M/r on {1, r^2, r^4} for f = z1 at the origin.
DeficitFit necessity_deficit(const RadialKahlerModel& model, const std::vector<double>& r_grid);
std::vector<double> default_deficit_grid(const RadialKahlerModel& model);

struct HomogeneityOptions {
  int ray_samples = 16;
  int radial_samples = 24;
  int segment_samples = 33;
  double d_override = -1.0;  // negative: use order_at_infinity
  std::uint64_t seed = 20240601;
};

struct HomogeneityReport {
  double value = 0.0;
  double d = 0.0;
  double r = 0.0;
  double K = 0.0;
};

HomogeneityReport homogeneity_check(const RadialKahlerModel& model, const HoloPoly& f, double K, double r,
                                    const HomogeneityOptions& opt = {});

/// Nonnegative root alpha of lambda = alpha (m + alpha - 2).
double cone_exponent(double lambda, int m);
double separation_eigenvalue(double alpha, int m);

/// CSV with columns r, h, M, logM, second_difference.
void write_curve_csv(std::ostream& os, const GrowthCurve& curve, const Convexifier* h,
                     const ConvexityReport* report);

}  // namespace hadamard
