// Geodesics of lambda(|z|)^2 |dz|^2 by Hamiltonian shooting.
//
// With H = |p|^2 / (2 lambda^2) the flow is
//   x' = p / lambda^2,   p' = |p|^2 / lambda^2 * grad log lambda,
// integrated in Cartesian coordinates of the line so the origin is a regular
// point. Unit speed corresponds to |p| = lambda at the start.

#include "hadamard/error.hpp"
#include "hadamard/numerics/calculus.hpp"
#include "hadamard/numerics/ode.hpp"
#include "hadamard/radial_metric.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hadamard {

namespace {

using State = Eigen::Vector4d;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

numerics::OdeOptions<double> geodesic_options() {
  numerics::OdeOptions<double> opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-13;
  return opt;
}

struct HamiltonianField {
  const RadialProfile& profile;

  State operator()(double, const State& y) const {
    const double rho = std::hypot(y[0], y[1]);
    if (!(rho < profile.rho_max)) return State::Constant(kNaN);
    const double lam = profile.lambda(rho);
    const double inv = 1.0 / (lam * lam);
    const double p2 = y[2] * y[2] + y[3] * y[3];
    double gx = 0.0, gy = 0.0;
    if (rho > 0.0) {
      const double c = profile_slope(profile, rho) / (lam * rho);
      gx = c * y[0];
      gy = c * y[1];
    }
    return State(y[2] * inv, y[3] * inv, p2 * inv * gx, p2 * inv * gy);
  }
};

State launch(const RadialProfile& profile, std::complex<double> p, double theta) {
  const double lam = profile.lambda(std::abs(p));
  return State(p.real(), p.imag(), lam * std::cos(theta), lam * std::sin(theta));
}

void check_point(const RadialKahlerModel& model, std::complex<double> z) {
  if (!(std::abs(z) < model.rho_max()) || !std::isfinite(std::abs(z))) {
    std::ostringstream os;
    os << "point " << z << " outside the domain of " << model.name();
    throw LabError(ErrorKind::domain, os.str());
  }
}

struct Approach {
  bool found = false;
  double t = 0.0;
  double miss = 0.0;
};

// Follows the geodesic from p until its first coordinate closest approach to
// q and returns the signed side on which q lies.
Approach closest_approach(const RadialKahlerModel& model, std::complex<double> p,
                          std::complex<double> q, double theta, double cap) {
  const HamiltonianField field{model.profile()};
  const double qx = q.real(), qy = q.imag();
  auto radial_speed = [&](const State& y) {
    return (y[0] - qx) * y[2] + (y[1] - qy) * y[3];
  };
  const State y0 = launch(model.profile(), p, theta);
  if (radial_speed(y0) >= 0.0) return {};

  auto res = numerics::integrate<double, 4>(field, 0.0, y0, cap, geodesic_options(),
                                            [&](double, const State& y) { return radial_speed(y) >= 0.0; });
  if (res.status != numerics::OdeStatus::stopped) return {};

  const auto& seg = res.solution.back();
  auto g = [&](double t) { return radial_speed(res.solution(t)); };
  std::uintmax_t iters = 100;
  const auto root = boost::math::tools::toms748_solve(
      g, seg.t0, seg.t0 + seg.h,
      [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(b)); }, iters);
  const double t = 0.5 * (root.first + root.second);
  const State y = res.solution(t);
  const double speed = std::hypot(y[2], y[3]);
  const double miss = (y[2] * (qy - y[1]) - y[3] * (qx - y[0])) / speed;
  return {true, t, miss};
}

}  // namespace

std::complex<double> exp_map(const RadialKahlerModel& model, std::complex<double> p, double theta,
                             double length) {
  check_point(model, p);
  if (!(length >= 0.0)) throw LabError(ErrorKind::invalid_argument, "negative geodesic length");
  if (length == 0.0) return p;
  const HamiltonianField field{model.profile()};
  auto opt = geodesic_options();
  opt.dense = false;
  const auto res = numerics::integrate<double, 4>(field, 0.0, launch(model.profile(), p, theta), length, opt);
  if (res.status != numerics::OdeStatus::finished) {
    std::ostringstream os;
    os << "geodesic from " << p << " at angle " << theta << " left the domain before length "
       << length << " (stopped at " << res.t << ")";
    throw LabError(ErrorKind::domain, os.str());
  }
  return {res.y[0], res.y[1]};
}

std::vector<std::vector<std::complex<double>>> geodesic_circles(const RadialKahlerModel& model,
                                                                std::complex<double> p,
                                                                const std::vector<double>& radii,
                                                                const std::vector<double>& angles) {
  check_point(model, p);
  double length = 0.0;
  for (double r : radii) {
    if (!(r >= 0.0)) throw LabError(ErrorKind::invalid_argument, "negative geodesic length");
    length = std::max(length, r);
  }
  std::vector<std::vector<std::complex<double>>> out(radii.size(),
                                                     std::vector<std::complex<double>>(angles.size(), p));
  if (length == 0.0) return out;
  const HamiltonianField field{model.profile()};
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const auto res =
        numerics::integrate<double, 4>(field, 0.0, launch(model.profile(), p, angles[j]), length, geodesic_options());
    if (res.status != numerics::OdeStatus::finished) {
      std::ostringstream os;
      os << "geodesic from " << p << " at angle " << angles[j] << " left the domain before length "
         << length;
      throw LabError(ErrorKind::domain, os.str());
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (radii[i] == 0.0) continue;
      const State y = res.solution(radii[i]);
      out[i][j] = {y[0], y[1]};
    }
  }
  return out;
}

double geodesic_distance(const RadialKahlerModel& model, std::complex<double> p,
                         std::complex<double> q) {
  check_point(model, p);
  check_point(model, q);
  if (p == q) return 0.0;

  // Length of the coordinate segment bounds the distance from above.
  const auto& prof = model.profile();
  const double seg = std::abs(q - p) * numerics::integrate(
                                           [&](double s) { return prof.lambda(std::abs(p + s * (q - p))); },
                                           0.0, 1.0, 1e-10);
  const double cap = 3.0 * seg;
  const double theta0 = std::arg(q - p);

  auto miss = [&](double th) { return closest_approach(model, p, q, th, cap); };
  auto refine = [&](double lo, double hi, double m_lo, double m_hi) {
    auto f = [&](double th) {
      const Approach a = miss(th);
      if (!a.found)
        throw LabError(ErrorKind::bracket_failure, "geodesic lost its closest approach during refinement");
      return a.miss;
    };
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(
        f, lo, hi, m_lo, m_hi, [](double a, double b) { return std::abs(a - b) <= 1e-12; }, iters);
    return miss(0.5 * (root.first + root.second));
  };

  for (double delta = 0.02; delta < 1.6; delta *= 2) {
    const Approach a_lo = miss(theta0 - delta);
    const Approach a_hi = miss(theta0 + delta);
    if (!a_lo.found || !a_hi.found) break;
    if ((a_lo.miss <= 0) != (a_hi.miss <= 0)) {
      const Approach best = refine(theta0 - delta, theta0 + delta, a_lo.miss, a_hi.miss);
      if (!best.found) throw LabError(ErrorKind::convergence_failure, "shooting did not converge");
      if (best.t <= seg * (1.0 + 1e-9)) return best.t;
      break;
    }
  }

  // Strongly curved geodesics leave p far from the chord direction, and a
  // bracket found above may belong to a longer geodesic: scan the half-plane
  // of launch angles facing q and keep the shortest hit.
  constexpr int kFan = 96;
  const double half = 0.5 * std::numbers::pi - 1e-3;
  std::vector<double> angles(kFan + 1);
  std::vector<Approach> fan(kFan + 1);
  for (int i = 0; i <= kFan; ++i) {
    angles[i] = theta0 - half + 2.0 * half * i / kFan;
    fan[i] = miss(angles[i]);
  }
  double best_t = kNaN;
  for (int i = 0; i < kFan; ++i) {
    const Approach& a = fan[i];
    const Approach& b = fan[i + 1];
    if (!a.found || !b.found || (a.miss <= 0) == (b.miss <= 0)) continue;
    try {
      const Approach hit = refine(angles[i], angles[i + 1], a.miss, b.miss);
      if (hit.found && std::abs(hit.miss) <= 1e-8 * std::max(1.0, std::abs(q - p)) &&
          !(hit.t >= best_t))
        best_t = hit.t;
    } catch (const LabError&) {
      // a jump of the closest approach, not a crossing
    }
  }
  if (std::isnan(best_t)) {
    std::ostringstream os;
    os << "launch angle not bracketed for p = " << p << ", q = " << q << " on " << model.name()
       << " (segment length " << seg << ")";
    throw LabError(ErrorKind::bracket_failure, os.str());
  }
  if (best_t > seg * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "no geodesic from " << p << " to " << q << " inside the chart of " << model.name()
       << " is shorter than the coordinate segment (" << seg << " < " << best_t << ")";
    throw LabError(ErrorKind::bracket_failure, os.str());
  }
  return best_t;
}

}  // namespace hadamard
