#pragma once

// Rotationally invariant Kahler model metrics.
//
// A U(n)-invariant metric is described by its restriction to a complex line
// through the origin, lambda(rho)^2 |dz|^2 with rho the Euclidean radius. All
// radial quantities (distance from the origin, holomorphic sectional curvature
// in the radial direction, the complex Hessian of the distance) are computed
// from lambda alone.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace hadamard {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using RealFn = std::function<double(double)>;

/// Conformal factor of the line metric. `lambda` is evaluated at rho >= 0 and
/// is understood to be extended evenly to negative rho. Derivatives are
/// optional; when absent they are computed by Richardson differences.
struct RadialProfile {
  std::string name;
  double rho_max = kInfinity;
  RealFn lambda;
  RealFn dlambda;
  RealFn d2lambda;
  RealFn integral;  // optional exact primitive, integral of lambda over [0, rho]
};

struct ProfileJet {
  double value;
  double first;
  double second;
};

/// lambda and its first two rho-derivatives at rho (analytic when the profile
/// carries them).
ProfileJet profile_jet(const RadialProfile& profile, double rho);

/// Same quantities, always by Richardson differences of `lambda`.
ProfileJet numeric_profile_jet(const RadialProfile& profile, double rho);

/// lambda'(rho) only (analytic or Richardson).
double profile_slope(const RadialProfile& profile, double rho);

/// Closed-form accessors carried by built-in models. Any of them may be empty.
struct ClosedForms {
  RealFn r_of_rho;
  RealFn rho_of_r;
  RealFn curvature;  // H(r)
  RealFn hessian;    // r_{1 1bar}(r)
};

class RadialKahlerModel {
 public:
  RadialKahlerModel(int n, RadialProfile profile, ClosedForms closed = {},
                    std::optional<double> r_max = std::nullopt);

  int n() const { return n_; }
  const RadialProfile& profile() const { return profile_; }
  const ClosedForms& closed_forms() const { return closed_; }
  const std::string& name() const { return profile_.name; }
  double rho_max() const { return profile_.rho_max; }
  double r_max() const { return r_max_; }
  bool compact() const { return std::isfinite(r_max_) && !std::isfinite(profile_.rho_max); }

  /// Geodesic distance from the origin of a point at Euclidean radius rho.
  double r_of_rho(double rho) const;
  /// Inverse of r_of_rho.
  double rho_of_r(double r) const;

 private:
  int n_;
  RadialProfile profile_;
  ClosedForms closed_;
  double r_max_;
};

/// Construction parameters for the built-in model family.
struct ModelSpec {
  std::string tag = "flat";  // flat | cigar | hyperbolic | sphere | conformal_poly | custom
  int n = 1;
  double kappa = 1.0;
  std::vector<double> coeffs;  // conformal_poly: lambda = sum c_k rho^(2k)
  double rho_max = kInfinity;  // conformal_poly only
  std::string table_path;      // custom only
};

RadialKahlerModel builtin_model(const ModelSpec& spec);

RadialKahlerModel flat_model(int n = 1);
RadialKahlerModel cigar_model(int n = 1);
RadialKahlerModel hyperbolic_model(double kappa = 1.0, int n = 1);
RadialKahlerModel sphere_model(double kappa = 1.0, int n = 1);
RadialKahlerModel conformal_poly_model(std::vector<double> coeffs, int n = 1,
                                       double rho_max = kInfinity);

/// Profile from sampled (rho, lambda) pairs, interpolated by an even cubic
/// spline. rho must start at 0 and increase strictly; lambda must be positive.
RadialProfile profile_from_table(const std::vector<double>& rho, const std::vector<double>& lambda,
                                 std::string name = "custom");

/// Reads a two-column table with header line `# rho lambda`.
RadialProfile load_profile_table(const std::string& path);

RadialKahlerModel custom_model(RadialProfile profile, int n = 1);

/// Model from a radial Kahler potential phi(t), t = |z|^2, given through phi'
/// and phi''. The line metric is lambda^2 = phi'(t) + t phi''(t).
RadialKahlerModel model_from_potential(int n, RealFn dphi, RealFn d2phi,
                                       double rho_max = kInfinity, std::string name = "potential");

double distance_from_origin(const RadialKahlerModel& model, double rho);

/// Holomorphic sectional curvature in the radial direction at distance r; for
/// n = 1 this is the Gaussian curvature -lambda^-2 Laplacian(log lambda).
double radial_curvature(const RadialKahlerModel& model, double r);

/// Curvature at Euclidean radius rho from a given jet of lambda. Below
/// `small_rho` the radial Laplacian of log lambda is taken as 2 (log lambda)'',
/// which holds to O(rho^2) for even profiles and avoids dividing a noisy
/// first derivative by rho.
double curvature_from_jet(const ProfileJet& jet, double rho, double small_rho = 0.0);

/// r_{1 1bar} of the distance function along the radial direction:
/// J'(r) / (2 J(r)) with J = lambda(rho) rho.
double model_hessian(const RadialKahlerModel& model, double r);

/// Geodesic distance between two points of a complex line through the origin.
double geodesic_distance(const RadialKahlerModel& model, std::complex<double> p,
                         std::complex<double> q);

/// End point of the unit-speed geodesic leaving p in direction angle theta
/// (measured in the coordinate plane) after arc length `length`.
std::complex<double> exp_map(const RadialKahlerModel& model, std::complex<double> p, double theta,
                             double length);

/// exp_p(r e^{i theta}) for every radius and angle, one integration per angle.
/// Result is indexed [radius][angle].
std::vector<std::vector<std::complex<double>>> geodesic_circles(const RadialKahlerModel& model,
                                                                std::complex<double> p,
                                                                const std::vector<double>& radii,
                                                                const std::vector<double>& angles);

}  // namespace hadamard
