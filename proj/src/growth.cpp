#include "hadamard/growth.hpp"

#include "hadamard/error.hpp"
#include "hadamard/numerics/optimize.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

namespace hadamard {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_origin(const Eigen::VectorXcd& c) { return c.size() == 0 || c.isZero(0.0); }

void check_radius(const RadialKahlerModel& model, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw LabError(ErrorKind::invalid_argument, "radius must be positive and finite");
  if (!(r < model.r_max()))
    throw LabError(ErrorKind::domain, "radius " + std::to_string(r) + " is not below r_max = " +
                                          std::to_string(model.r_max()) + " of " + model.name());
}

// log |f(rho u)| with f(rho u) / rho^k evaluated first, k the degree for rho >= 1
// and the lowest degree otherwise, so neither large nor small rho overflows.
double log_abs_scaled(const HoloPoly& f, double rho, const Eigen::VectorXcd& u) {
  int lo = f.degree();
  for (const auto& [alpha, c] : f.coeffs()) lo = std::min(lo, std::accumulate(alpha.begin(), alpha.end(), 0));
  const int k = rho >= 1.0 ? f.degree() : lo;
  const double lr = std::log(rho);
  Complex sum = 0.0;
  for (const auto& [alpha, c] : f.coeffs()) {
    Complex term = c * std::exp((std::accumulate(alpha.begin(), alpha.end(), 0) - k) * lr);
    for (int i = 0; i < f.n(); ++i)
      for (int j = 0; j < alpha[i]; ++j) term *= u[i];
    sum += term;
  }
  return k * lr + std::log(std::abs(sum));
}

double monomial_log_max(const HoloPoly& f, double rho) {
  const auto& [alpha, c] = *f.coeffs().begin();
  const int total = std::accumulate(alpha.begin(), alpha.end(), 0);
  double lm = std::log(std::abs(c));
  if (total == 0) return lm;
  for (int a : alpha)
    if (a > 0) lm += 0.5 * a * std::log(static_cast<double>(a) / total);
  return lm + total * std::log(rho);
}

// Local maxima of a cyclic sample sequence, best first.
std::vector<std::size_t> local_maxima(const std::vector<double>& v, int keep) {
  const std::size_t m = v.size();
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < m; ++j) {
    const double prev = v[(j + m - 1) % m], next = v[(j + 1) % m];
    if (v[j] >= prev && v[j] >= next) idx.push_back(j);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  if (idx.size() > static_cast<std::size_t>(keep)) idx.resize(keep);
  return idx;
}

// Brent refinement of a sampled angular maximum.
template <typename F>
std::pair<double, double> refine_angle(F&& logval, double center, double half_width) {
  std::uintmax_t iters = 200;
  const auto res = boost::math::tools::brent_find_minima([&](double t) { return -logval(t); }, center - half_width,
                                                         center + half_width, 40, iters);
  return {res.first, -res.second};
}

ModulusSample circle_max(const HoloPoly& f, double rho, const MaxModulusOptions& opt) {
  const int m = opt.angular_samples;
  auto logval = [&](double th) {
    Eigen::VectorXcd u(1);
    u[0] = std::polar(1.0, th);
    return log_abs_scaled(f, rho, u);
  };
  std::vector<double> v(m);
  for (int j = 0; j < m; ++j) v[j] = logval(kTwoPi * j / m);
  ModulusSample best;
  best.log_M = -kInfinity;
  for (std::size_t j : local_maxima(v, opt.refine_starts)) {
    auto [th, val] = refine_angle(logval, kTwoPi * j / m, kTwoPi / m);
    val = std::max(val, v[j]);
    if (val > best.log_M) {
      best.log_M = val;
      best.argmax = Eigen::VectorXcd::Constant(1, std::polar(rho, th));
    }
  }
  return best;
}

Eigen::VectorXcd to_complex_unit(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size() / 2;
  Eigen::VectorXcd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = Complex(x[2 * i], x[2 * i + 1]);
  const double norm = u.norm();
  return norm > 0.0 ? Eigen::VectorXcd(u / norm) : u;
}

Eigen::VectorXd to_real(const Eigen::VectorXcd& u) {
  Eigen::VectorXd x(2 * u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    x[2 * i] = u[i].real();
    x[2 * i + 1] = u[i].imag();
  }
  return x;
}

std::vector<Eigen::VectorXcd> sphere_samples(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Eigen::VectorXcd> out;
  out.reserve(count + 2 * n);
  for (int i = 0; i < n; ++i) out.push_back(Eigen::VectorXcd::Unit(n, i));
  out.push_back(Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd x(2 * n);
    for (auto& xi : x) xi = gauss(rng);
    out.push_back(to_complex_unit(x));
  }
  return out;
}

// Maximum of log |f| on the Euclidean sphere of radius rho in C^n, n >= 2.
ModulusSample sphere_max(const HoloPoly& f, double rho, const std::vector<Eigen::VectorXcd>& samples,
                         const std::vector<Eigen::VectorXcd>& warm, int starts) {
  auto logval = [&](const Eigen::VectorXcd& u) { return log_abs_scaled(f, rho, u); };
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) scored.emplace_back(logval(samples[k]), k);
  const std::size_t keep = std::min<std::size_t>(starts, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<Eigen::VectorXcd> seeds;
  for (std::size_t k = 0; k < keep; ++k) seeds.push_back(samples[scored[k].second]);
  for (const auto& w : warm) {
    const double norm = w.norm();
    if (norm > 0.0) seeds.push_back(w / norm);
  }

  auto objective = [&](const Eigen::VectorXd& x) {
    const double v = logval(to_complex_unit(x));
    return std::isfinite(v) ? -v : 1e300;
  };
  ModulusSample best;
  best.log_M = -kInfinity;
  for (const auto& s : seeds) {
    Eigen::VectorXd x = to_real(s);
    double val = -objective(x);
    for (double step : {0.05, 0.005}) {
      const auto res = numerics::nelder_mead(objective, x, step, 1e-15, 20000);
      if (-res.value >= val) {
        val = -res.value;
        x = res.x;
      }
    }
    if (val > best.log_M) {
      best.log_M = val;
      best.argmax = to_complex_unit(x);
    }
  }
  return best;
}

// Maximum of log |f| on the geodesic circle of radius r about c (n = 1).
ModulusSample geodesic_circle_max(const RadialKahlerModel& model, const HoloPoly& f, Complex c, double r,
                                  const std::vector<Complex>& circle, const MaxModulusOptions& opt) {
  const int m = static_cast<int>(circle.size());
  std::vector<double> v(m);
  for (int j = 0; j < m; ++j) v[j] = std::log(std::abs(f(circle[j])));
  auto logval = [&](double th) { return std::log(std::abs(f(exp_map(model, c, th, r)))); };
  ModulusSample best;
  best.log_M = -kInfinity;
  for (std::size_t j : local_maxima(v, opt.refine_starts)) {
    auto [th, val] = refine_angle(logval, kTwoPi * j / m, kTwoPi / m);
    if (v[j] > val) {
      val = v[j];
      th = kTwoPi * j / m;
    }
    if (val > best.log_M) {
      best.log_M = val;
      best.argmax = Eigen::VectorXcd::Constant(1, exp_map(model, c, th, r));
    }
  }
  return best;
}

std::vector<double> angle_grid(int m) {
  std::vector<double> a(m);
  for (int j = 0; j < m; ++j) a[j] = kTwoPi * j / m;
  return a;
}

void check_center(const HoloPoly& f, const Eigen::VectorXcd& center) {
  if (center.size() != 0 && center.size() != f.n())
    throw LabError(ErrorKind::invalid_argument, "center dimension does not match the polynomial");
  if (!is_origin(center) && f.n() != 1)
    throw LabError(ErrorKind::invalid_argument, "off-center balls are supported for n = 1 only");
}

double slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::ArrayXd dx = x.array() - x.mean();
  return (dx * (y.array() - y.mean())).sum() / dx.square().sum();
}

}  // namespace

ModulusSample log_max_modulus(const RadialKahlerModel& model, const HoloPoly& f, const Eigen::VectorXcd& center,
                              double r, const MaxModulusOptions& opt, const std::vector<Eigen::VectorXcd>& warm) {
  check_center(f, center);
  check_radius(model, r);
  if (is_origin(center)) {
    const double rho = model.rho_of_r(r);
    if (f.is_monomial()) return {monomial_log_max(f, rho), true, {}};
    if (f.n() == 1) return circle_max(f, rho, opt);
    return sphere_max(f, rho, sphere_samples(f.n(), opt.sphere_samples, opt.seed), warm, opt.refine_starts);
  }
  const Complex c = center[0];
  const auto circle = geodesic_circles(model, c, {r}, angle_grid(opt.angular_samples));
  return geodesic_circle_max(model, f, c, r, circle[0], opt);
}

double max_modulus(const RadialKahlerModel& model, const HoloPoly& f, const Eigen::VectorXcd& center, double r,
                   const MaxModulusOptions& opt) {
  return std::exp(log_max_modulus(model, f, center, r, opt).log_M);
}

double GrowthCurve::value(std::size_t i) const { return std::exp(log_values.at(i)); }

GrowthCurve growth_curve(const RadialKahlerModel& model, const HoloPoly& f, const Eigen::VectorXcd& center,
                         const std::vector<double>& radii, const MaxModulusOptions& opt) {
  check_center(f, center);
  if (radii.empty()) throw LabError(ErrorKind::invalid_argument, "empty radius list");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    check_radius(model, radii[i]);
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw LabError(ErrorKind::invalid_argument, "radii must be strictly increasing");
  }
  GrowthCurve curve{model.name(), model.compact(), f,
                    center.size() == 0 ? Eigen::VectorXcd(Eigen::VectorXcd::Zero(f.n())) : center,
                    radii, std::vector<double>(radii.size()), std::vector<bool>(radii.size())};
  const std::size_t m = radii.size();

  if (!is_origin(center)) {
    const Complex c = center[0];
    const auto circles = geodesic_circles(model, c, radii, angle_grid(opt.angular_samples));
    for (std::size_t i = 0; i < m; ++i) {
      curve.log_values[i] = geodesic_circle_max(model, f, c, radii[i], circles[i], opt).log_M;
      curve.exact[i] = false;
    }
  } else if (f.is_monomial() || f.n() == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto s = log_max_modulus(model, f, center, radii[i], opt);
      curve.log_values[i] = s.log_M;
      curve.exact[i] = s.exact;
    }
  } else {
    // Forward and backward sweeps pass maximizing directions between
    // neighbouring radii.
    const auto samples = sphere_samples(f.n(), opt.sphere_samples, opt.seed);
    std::vector<double> rho(m);
    for (std::size_t i = 0; i < m; ++i) rho[i] = model.rho_of_r(radii[i]);
    std::vector<ModulusSample> best(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Eigen::VectorXcd> warm;
      if (i > 0) warm.push_back(best[i - 1].argmax);
      best[i] = sphere_max(f, rho[i], samples, warm, opt.refine_starts);
    }
    auto improve = [&](std::size_t i, std::size_t from) {
      const auto s = sphere_max(f, rho[i], {}, {best[from].argmax}, 0);
      if (s.log_M > best[i].log_M) best[i] = s;
    };
    for (std::size_t i = m - 1; i-- > 0;) improve(i, i + 1);
    for (std::size_t i = 1; i < m; ++i) improve(i, i - 1);
    for (std::size_t i = 0; i < m; ++i) {
      curve.log_values[i] = best[i].log_M;
      curve.exact[i] = false;
    }
  }

  for (std::size_t i = 0; i < m; ++i)
    if (!std::isfinite(curve.log_values[i]))
      throw LabError(ErrorKind::convergence_failure,
                     "maximal modulus not finite at r = " + std::to_string(radii[i]));
  for (std::size_t i = 1; i < m; ++i) {
    const double drop = curve.log_values[i - 1] - curve.log_values[i];
    if (drop > 1e-9 * std::max(1.0, std::abs(curve.log_values[i])))
      throw LabError(ErrorKind::convergence_failure,
                     "maximal modulus decreased between r = " + std::to_string(radii[i - 1]) +
                         " and r = " + std::to_string(radii[i]) + "; maximization did not converge");
  }
  return curve;
}

ConvexityReport three_circle_check(const GrowthCurve& curve, const Convexifier& h, double tol) {
  const std::size_t m = curve.size();
  if (m < 3) throw LabError(ErrorKind::invalid_argument, "three-circle check needs at least 3 radii");
  ConvexityReport rep;
  rep.tolerance = tol;
  rep.radii = curve.radii;
  rep.log_values = curve.log_values;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = curve.radii[i];
    if (!(r < h.r_max)) throw LabError(ErrorKind::domain, "radius outside the convexifier's domain");
    const double hv = h.h(r);
    if (!std::isfinite(hv)) throw LabError(ErrorKind::domain, "convexifier not finite at r = " + std::to_string(r));
    if (i > 0 && !(hv > rep.h_values.back()))
      throw LabError(ErrorKind::invalid_argument, "h is not strictly increasing on the radii");
    rep.h_values.push_back(hv);
  }
  rep.min_second_difference = kInfinity;
  rep.min_scaled_difference = kInfinity;
  rep.pass = true;
  for (std::size_t i = 0; i + 2 < m; ++i) {
    const auto& L = curve.log_values;
    const auto& H = rep.h_values;
    const double s1 = (L[i + 1] - L[i]) / (H[i + 1] - H[i]);
    const double s2 = (L[i + 2] - L[i + 1]) / (H[i + 2] - H[i + 1]);
    const double diff = s2 - s1;
    const double scaled = diff / std::max(1.0, std::abs(L[i + 1]));
    rep.second_differences.push_back(diff);
    rep.scaled_differences.push_back(scaled);
    rep.min_second_difference = std::min(rep.min_second_difference, diff);
    if (scaled < rep.min_scaled_difference) {
      rep.min_scaled_difference = scaled;
      rep.argmin_r = curve.radii[i + 1];
    }
    if (scaled < -tol) rep.pass = false;
  }
  return rep;
}

MonotonicityReport monotonicity_check(const GrowthCurve& curve, const Convexifier& h, double d,
                                      Direction direction, double tol) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw LabError(ErrorKind::invalid_argument, "exponent d must be finite and >= 0");
  if (curve.size() < 2) throw LabError(ErrorKind::invalid_argument, "monotonicity check needs at least 2 radii");
  MonotonicityReport rep;
  rep.d = d;
  rep.direction = direction;
  rep.tolerance = tol;
  rep.radii = curve.radii;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double r = curve.radii[i];
    if (!(r < h.r_max)) throw LabError(ErrorKind::domain, "radius outside the convexifier's domain");
    rep.ratios.push_back(curve.log_values[i] - d * h.h(r));
  }
  rep.worst_step = -kInfinity;
  rep.pass = true;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double step = rep.ratios[i + 1] - rep.ratios[i];
    if (direction == Direction::nondecreasing) step = -step;
    if (step > rep.worst_step) {
      rep.worst_step = step;
      rep.argworst_r = curve.radii[i + 1];
    }
    if (step > tol * (1.0 + std::abs(curve.log_values[i + 1]))) rep.pass = false;
  }
  return rep;
}

double order_at_infinity(const GrowthCurve& curve) {
  if (curve.model_compact)
    throw LabError(ErrorKind::compact_model, "order at infinity is undefined on the compact model " + curve.model_name);
  const std::size_t m = curve.size();
  if (m == 0 || curve.radii.back() < 1e2)
    throw LabError(ErrorKind::invalid_argument, "order at infinity needs radii reaching at least 1e2");
  const double top = curve.radii.back();
  auto fit = [&](double lo, double hi, std::size_t& count) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < m; ++i) {
      if (curve.radii[i] >= lo * (1.0 - 1e-12) && curve.radii[i] <= hi * (1.0 + 1e-12)) {
        x.push_back(std::log(curve.radii[i]));
        y.push_back(curve.log_values[i]);
      }
    }
    count = x.size();
    if (count < 2) return 0.0;
    return slope(Eigen::Map<Eigen::VectorXd>(x.data(), count), Eigen::Map<Eigen::VectorXd>(y.data(), count));
  };
  std::size_t n_last = 0, n_prev = 0;
  const double last = fit(top / 10.0, top, n_last);
  if (n_last < 10)
    throw LabError(ErrorKind::invalid_argument, "order at infinity needs at least 10 samples in the last decade");
  double prev = fit(top / 100.0, top / 10.0, n_prev);
  if (n_prev < 3) {
    std::size_t n_half = 0;
    prev = fit(top / 10.0, top / std::sqrt(10.0), n_half);
    const double upper = fit(top / std::sqrt(10.0), top, n_half);
    if (prev > 0.0 && upper > 1.1 * prev) return kInfinity;
    return last;
  }
  if (prev > 0.0 && last > 1.1 * prev) return kInfinity;
  return last;
}

std::vector<double> default_deficit_grid(const RadialKahlerModel& model) {
  const double s = std::min(1.0, model.r_max());
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i) grid.push_back(s * (0.02 + 0.02 * i));
  return grid;
}

DeficitFit necessity_deficit(const RadialKahlerModel& model, const std::vector<double>& r_grid) {
  const double bound = 0.2 * std::min(1.0, model.r_max());
  if (r_grid.size() < 6) throw LabError(ErrorKind::invalid_argument, "deficit fit needs at least 6 radii");
  double rmax = 0.0;
  for (double r : r_grid) {
    if (!(r > 0.0) || !(r < bound))
      throw LabError(ErrorKind::invalid_argument,
                     "deficit radii must lie in (0, " + std::to_string(bound) + ")");
    rmax = std::max(rmax, r);
  }
  const Eigen::Index m = static_cast<Eigen::Index>(r_grid.size());
  Eigen::MatrixXd X(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double r = r_grid[i], t = (r / rmax) * (r / rmax);
    X(i, 0) = 1.0;
    X(i, 1) = t;
    X(i, 2) = t * t;
    y[i] = model.rho_of_r(r) / r;  // M(r) / r for f = z1
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  DeficitFit fit;
  fit.condition = sv[0] / sv[sv.size() - 1];
  if (!(fit.condition < 1e8))
    throw LabError(ErrorKind::invalid_argument,
                   "deficit grid too coarse for a stable fit (condition number " + std::to_string(fit.condition) + ")");
  const Eigen::VectorXd beta = svd.solve(y);
  fit.limit = beta[0];
  fit.c2 = beta[1] / (rmax * rmax) / beta[0];
  const double r_small = std::min(1e-3, 0.1 * *std::min_element(r_grid.begin(), r_grid.end()));
  fit.predicted = radial_curvature(model, r_small) / 12.0;
  return fit;
}

HomogeneityReport homogeneity_check(const RadialKahlerModel& model, const HoloPoly& f, double K, double r,
                                    const HomogeneityOptions& opt) {
  if (model.compact())
    throw LabError(ErrorKind::compact_model, "homogeneity is undefined on the compact model " + model.name());
  if (!(K > 1.0)) throw LabError(ErrorKind::invalid_argument, "K must exceed 1");
  check_radius(model, r);
  check_radius(model, 100.0 * K * r);
  const Eigen::VectorXcd origin = Eigen::VectorXcd::Zero(f.n());

  double d = opt.d_override;
  if (d < 0.0) {
    std::vector<double> radii;
    for (int i = 0; i < 41; ++i) radii.push_back(K * r * std::pow(100.0, i / 40.0));
    MaxModulusOptions mo;
    mo.seed = opt.seed;
    d = order_at_infinity(growth_curve(model, f, origin, radii, mo));
  }
  if (!std::isfinite(d))
    throw LabError(ErrorKind::infinite_order, "order at infinity is infinite; f has no finite homogeneity degree");
  if (!(d > 1e-9)) throw LabError(ErrorKind::invalid_argument, "homogeneity needs positive order at infinity");

  std::vector<Eigen::VectorXcd> rays;
  if (f.n() == 1) {
    for (int j = 0; j < opt.ray_samples; ++j)
      rays.push_back(Eigen::VectorXcd::Constant(1, std::polar(1.0, kTwoPi * j / opt.ray_samples)));
  } else {
    rays = sphere_samples(f.n(), opt.ray_samples, opt.seed);
  }

  MaxModulusOptions mo;
  mo.seed = opt.seed;
  const double log_norm = log_max_modulus(model, f, origin, r, mo).log_M;
  double sup = 0.0;
  for (const auto& u : rays) {
    for (int k = 0; k < opt.radial_samples; ++k) {
      const double t = r * std::pow(K, static_cast<double>(k) / (opt.radial_samples - 1));
      const Complex fx = f(Eigen::VectorXcd(model.rho_of_r(t) * u));
      for (int l = 0; l < opt.segment_samples; ++l) {
        const double s = static_cast<double>(l) / (opt.segment_samples - 1);
        const double ry = s * t;
        const Complex fy = ry > 0.0 ? f(Eigen::VectorXcd(model.rho_of_r(ry) * u)) : f(Eigen::VectorXcd::Zero(f.n()));
        // |f(y) r(x)^d - f(x) r(y)^d| / (M_f(r) r^d)
        const Complex diff = fy * std::pow(t / r, d) - fx * std::pow(ry / r, d);
        sup = std::max(sup, std::abs(diff) * std::exp(-log_norm));
      }
    }
  }
  return {sup, d, r, K};
}

double cone_exponent(double lambda, int m) {
  if (!(lambda >= 0.0)) throw LabError(ErrorKind::invalid_argument, "eigenvalue must be >= 0");
  if (m < 2) throw LabError(ErrorKind::invalid_argument, "cone dimension must be >= 2");
  if (lambda == 0.0) return 0.0;
  const double b = m - 2.0;
  return 2.0 * lambda / (b + std::sqrt(b * b + 4.0 * lambda));
}

double separation_eigenvalue(double alpha, int m) {
  if (!(alpha >= 0.0)) throw LabError(ErrorKind::invalid_argument, "exponent must be >= 0");
  if (m < 2) throw LabError(ErrorKind::invalid_argument, "cone dimension must be >= 2");
  return alpha * (m + alpha - 2.0);
}

void write_curve_csv(std::ostream& os, const GrowthCurve& curve, const Convexifier* h, const ConvexityReport* report) {
  os << "r,h,M,logM,second_difference\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < curve.size(); ++i) {
    os << num(curve.radii[i]) << ',';
    if (h) os << num(h->h(curve.radii[i]));
    os << ',' << num(curve.value(i)) << ',' << num(curve.log_values[i]) << ',';
    if (report && i > 0 && i + 1 < curve.size()) os << num(report->second_differences[i - 1]);
    os << '\n';
  }
}

}  // namespace hadamard
