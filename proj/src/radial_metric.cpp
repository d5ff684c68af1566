#include "hadamard/radial_metric.hpp"

#include "hadamard/error.hpp"
#include "hadamard/numerics/calculus.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace hadamard {

namespace {

constexpr double kPi = std::numbers::pi;

// Step for numeric first derivatives; second derivatives use a wider step
// since their round-off grows like eps / h^2.
double first_step(const RadialProfile& p, double rho) {
  double h = std::max(1e-5, 1e-4 * rho);
  if (std::isfinite(p.rho_max)) h = std::min(h, 0.02 * (p.rho_max - rho));
  return h;
}

double second_step(const RadialProfile& p, double rho) {
  double h = std::max(1e-3, 1e-3 * rho);
  if (std::isfinite(p.rho_max)) h = std::min(h, 0.02 * (p.rho_max - rho));
  return h;
}

void check_rho(const RadialProfile& p, double rho) {
  if (!(rho >= 0.0) || !(rho < p.rho_max))
    throw LabError(ErrorKind::domain, "rho = " + std::to_string(rho) + " outside [0, " +
                                          std::to_string(p.rho_max) + ") for profile " + p.name);
}

// Even natural cubic spline through mirrored table data.
class EvenSpline {
 public:
  EvenSpline(const std::vector<double>& rho, const std::vector<double>& lam) {
    const std::size_t m = rho.size();
    x_.reserve(2 * m - 1);
    y_.reserve(2 * m - 1);
    for (std::size_t i = m - 1; i > 0; --i) {
      x_.push_back(-rho[i]);
      y_.push_back(lam[i]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      x_.push_back(rho[i]);
      y_.push_back(lam[i]);
    }
    const std::size_t N = x_.size();
    M_.assign(N, 0.0);
    // Thomas algorithm for the interior second derivatives.
    std::vector<double> a(N, 0.0), b(N, 1.0), c(N, 0.0), d(N, 0.0);
    for (std::size_t i = 1; i + 1 < N; ++i) {
      const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      a[i] = h0 / 6;
      b[i] = (h0 + h1) / 3;
      c[i] = h1 / 6;
      d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < N; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    M_[N - 1] = d[N - 1] / b[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) M_[i] = (d[i] - c[i] * M_[i + 1]) / b[i];
    M_.front() = M_.back() = 0.0;

    zero_ = m - 1;
    cumulative_.assign(N, 0.0);
    for (std::size_t i = zero_; i + 1 < N; ++i)
      cumulative_[i + 1] = cumulative_[i] + segment_integral(i, x_[i + 1]);
  }

  double value(double r) const {
    const auto [i, u, v, h] = locate(r);
    return M_[i] * v * v * v / (6 * h) + M_[i + 1] * u * u * u / (6 * h) +
           (y_[i] / h - M_[i] * h / 6) * v + (y_[i + 1] / h - M_[i + 1] * h / 6) * u;
  }
  double first(double r) const {
    const double s = r < 0 ? -1.0 : 1.0;
    const auto [i, u, v, h] = locate(r);
    return s * (-M_[i] * v * v / (2 * h) + M_[i + 1] * u * u / (2 * h) - (y_[i] / h - M_[i] * h / 6) +
                (y_[i + 1] / h - M_[i + 1] * h / 6));
  }
  double second(double r) const {
    const auto [i, u, v, h] = locate(r);
    return M_[i] * v / h + M_[i + 1] * u / h;
  }
  double integral(double r) const {
    const std::size_t i = locate(r).i;
    return cumulative_[i] + segment_integral(i, std::abs(r));
  }

 private:
  struct Loc {
    std::size_t i;
    double u, v, h;
  };
  Loc locate(double r) const {
    r = std::abs(r);
    auto it = std::upper_bound(x_.begin() + static_cast<long>(zero_), x_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, zero_, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    return {i, r - x_[i], x_[i + 1] - r, h};
  }
  double segment_integral(std::size_t i, double r) const {
    const double h = x_[i + 1] - x_[i];
    const double u = r - x_[i], v = x_[i + 1] - r;
    return M_[i] * (h * h * h * h - v * v * v * v) / (24 * h) + M_[i + 1] * u * u * u * u / (24 * h) +
           (y_[i] / h - M_[i] * h / 6) * (h * h - v * v) / 2 +
           (y_[i + 1] / h - M_[i + 1] * h / 6) * u * u / 2;
  }

  std::vector<double> x_, y_, M_, cumulative_;
  std::size_t zero_ = 0;
};

// Decides whether the integral of lambda over [0, infinity) converges by
// comparing successive decade increments, then evaluates it.
double improper_length(const RadialProfile& p) {
  double total = numerics::integrate(p.lambda, 0.0, 1.0);
  double prev_inc = 0.0;
  double lo = 1.0;
  for (int k = 0; k < 8; ++k) {
    const double hi = lo * 10;
    const double inc = numerics::integrate(p.lambda, lo, hi);
    total += inc;
    if (k >= 5 && prev_inc > 0 && inc / prev_inc > 0.5) return kInfinity;
    if (k == 7 && prev_inc > 0) {
      const double q = inc / prev_inc;
      total += inc * q / (1.0 - q);  // geometric tail beyond the last decade
    }
    prev_inc = inc;
    lo = hi;
  }
  return total;
}

}  // namespace

ProfileJet numeric_profile_jet(const RadialProfile& p, double rho) {
  auto lam = [&p](double x) { return p.lambda(std::abs(x)); };
  const auto d1 = numerics::richardson_first(lam, rho, first_step(p, rho));
  const auto d2 = numerics::richardson_second(lam, rho, second_step(p, rho));
  const double v = lam(rho);
  const double scale = std::abs(v) + std::abs(d1.value) + std::abs(d2.value);
  if (!std::isfinite(d1.value) || !std::isfinite(d2.value) || d1.error > 1e-6 * scale ||
      d2.error > 1e-6 * scale)
    throw LabError(ErrorKind::refinement_failure,
                   "unstable derivative of lambda at rho = " + std::to_string(rho) + " (profile " +
                       p.name + ")");
  return {v, d1.value, d2.value};
}

double profile_slope(const RadialProfile& p, double rho) {
  if (p.dlambda) return p.dlambda(rho);
  auto lam = [&p](double x) { return p.lambda(std::abs(x)); };
  return numerics::richardson_first(lam, rho, first_step(p, rho)).value;
}

ProfileJet profile_jet(const RadialProfile& p, double rho) {
  if (p.dlambda && p.d2lambda) return {p.lambda(rho), p.dlambda(rho), p.d2lambda(rho)};
  return numeric_profile_jet(p, rho);
}

double curvature_from_jet(const ProfileJet& jet, double rho, double small_rho) {
  const double l1 = jet.first / jet.value;
  const double l2 = jet.second / jet.value - l1 * l1;
  const double lap = (rho > small_rho && rho > 0.0) ? l2 + l1 / rho : 2.0 * l2;
  return -lap / (jet.value * jet.value);
}

RadialKahlerModel::RadialKahlerModel(int n, RadialProfile profile, ClosedForms closed,
                                     std::optional<double> r_max)
    : n_(n), profile_(std::move(profile)), closed_(std::move(closed)) {
  if (n_ < 1) throw LabError(ErrorKind::invalid_argument, "complex dimension must be >= 1");
  if (!profile_.lambda) throw LabError(ErrorKind::invalid_argument, "profile has no lambda");
  if (!(profile_.lambda(0.0) > 0.0) || !std::isfinite(profile_.lambda(0.0)))
    throw LabError(ErrorKind::invalid_argument, "lambda(0) must be finite and positive");
  if (r_max) {
    r_max_ = *r_max;
  } else if (std::isfinite(profile_.rho_max)) {
    r_max_ = closed_.r_of_rho      ? closed_.r_of_rho(profile_.rho_max)
             : profile_.integral ? profile_.integral(profile_.rho_max)
                                 : numerics::integrate(profile_.lambda, 0.0, profile_.rho_max);
  } else {
    r_max_ = improper_length(profile_);
  }
}

double RadialKahlerModel::r_of_rho(double rho) const {
  check_rho(profile_, rho);
  if (closed_.r_of_rho) return closed_.r_of_rho(rho);
  if (profile_.integral) return profile_.integral(rho);
  return numerics::integrate(profile_.lambda, 0.0, rho);
}

double RadialKahlerModel::rho_of_r(double r) const {
  if (!(r >= 0.0) || !(r < r_max_))
    throw LabError(ErrorKind::domain, "r = " + std::to_string(r) + " outside [0, " +
                                          std::to_string(r_max_) + ") for model " + name());
  if (closed_.rho_of_r) return closed_.rho_of_r(r);
  if (r == 0.0) return 0.0;

  // Bracket, then safeguarded Newton with dr/drho = lambda.
  double hi = r / profile_.lambda(0.0);
  if (std::isfinite(profile_.rho_max)) hi = std::min(hi, 0.5 * profile_.rho_max);
  double lo = 0.0;
  for (int i = 0; i < 200 && r_of_rho(hi) < r; ++i) {
    lo = hi;
    hi = std::isfinite(profile_.rho_max) ? 0.5 * (hi + profile_.rho_max) : 2.0 * hi;
  }
  if (r_of_rho(hi) < r)
    throw LabError(ErrorKind::bracket_failure, "could not bracket rho for r = " + std::to_string(r));
  std::uintmax_t iters = 200;
  auto fn = [&](double rho) { return std::make_pair(r_of_rho(rho) - r, profile_.lambda(rho)); };
  const double rho =
      boost::math::tools::newton_raphson_iterate(fn, 0.5 * (lo + hi), lo, hi, 50, iters);
  return rho;
}

RadialKahlerModel flat_model(int n) {
  RadialProfile p{"flat", kInfinity, [](double) { return 1.0; }, [](double) { return 0.0; },
                  [](double) { return 0.0; }, {}};
  ClosedForms c;
  c.r_of_rho = [](double rho) { return rho; };
  c.rho_of_r = [](double r) { return r; };
  c.curvature = [](double) { return 0.0; };
  c.hessian = [](double r) { return 1.0 / (2.0 * r); };
  return RadialKahlerModel(n, std::move(p), std::move(c), kInfinity);
}

RadialKahlerModel cigar_model(int n) {
  RadialProfile p;
  p.name = "cigar";
  p.lambda = [](double x) { return 1.0 / std::sqrt(1.0 + x * x); };
  p.dlambda = [](double x) { return -x * std::pow(1.0 + x * x, -1.5); };
  p.d2lambda = [](double x) { return (2.0 * x * x - 1.0) * std::pow(1.0 + x * x, -2.5); };
  ClosedForms c;
  c.r_of_rho = [](double rho) { return std::asinh(rho); };
  c.rho_of_r = [](double r) { return std::sinh(r); };
  c.curvature = [](double r) {
    const double ch = std::cosh(r);
    return 2.0 / (ch * ch);
  };
  c.hessian = [](double r) { return 1.0 / std::sinh(2.0 * r); };
  return RadialKahlerModel(n, std::move(p), std::move(c), kInfinity);
}

RadialKahlerModel hyperbolic_model(double kappa, int n) {
  if (!(kappa > 0.0)) throw LabError(ErrorKind::invalid_argument, "hyperbolic model needs kappa > 0");
  const double s = std::sqrt(kappa);
  RadialProfile p;
  p.name = "hyperbolic";
  p.rho_max = 1.0;
  p.lambda = [s](double x) { return (2.0 / s) / (1.0 - x * x); };
  p.dlambda = [s](double x) {
    const double q = 1.0 - x * x;
    return (2.0 / s) * 2.0 * x / (q * q);
  };
  p.d2lambda = [s](double x) {
    const double q = 1.0 - x * x;
    return (2.0 / s) * (2.0 + 6.0 * x * x) / (q * q * q);
  };
  ClosedForms c;
  c.r_of_rho = [s](double rho) { return (2.0 / s) * std::atanh(rho); };
  c.rho_of_r = [s](double r) { return std::tanh(0.5 * s * r); };
  c.curvature = [kappa](double) { return -kappa; };
  c.hessian = [s](double r) { return 0.5 * s / std::tanh(s * r); };
  return RadialKahlerModel(n, std::move(p), std::move(c), kInfinity);
}

RadialKahlerModel sphere_model(double kappa, int n) {
  if (!(kappa > 0.0)) throw LabError(ErrorKind::invalid_argument, "sphere model needs kappa > 0");
  const double s = std::sqrt(kappa);
  RadialProfile p;
  p.name = "sphere";
  p.lambda = [s](double x) { return (2.0 / s) / (1.0 + x * x); };
  p.dlambda = [s](double x) {
    const double q = 1.0 + x * x;
    return -(2.0 / s) * 2.0 * x / (q * q);
  };
  p.d2lambda = [s](double x) {
    const double q = 1.0 + x * x;
    return (2.0 / s) * (6.0 * x * x - 2.0) / (q * q * q);
  };
  ClosedForms c;
  c.r_of_rho = [s](double rho) { return (2.0 / s) * std::atan(rho); };
  c.rho_of_r = [s](double r) { return std::tan(0.5 * s * r); };
  c.curvature = [kappa](double) { return kappa; };
  c.hessian = [s](double r) { return 0.5 * s / std::tan(s * r); };
  return RadialKahlerModel(n, std::move(p), std::move(c), kPi / s);
}

RadialKahlerModel conformal_poly_model(std::vector<double> coeffs, int n, double rho_max) {
  if (coeffs.empty() || !(coeffs.front() > 0.0))
    throw LabError(ErrorKind::invalid_argument, "conformal_poly needs a positive constant term");
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (!(rho_max > 0.0)) throw LabError(ErrorKind::invalid_argument, "rho_max must be positive");

  auto horner = [](const std::vector<double>& c, double s) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
    return v;
  };
  // Coefficient lists (in s = rho^2) for lambda'/rho, lambda'' and r/rho.
  std::vector<double> d1, d2, integ;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    integ.push_back(coeffs[k] / static_cast<double>(2 * k + 1));
    if (k >= 1) {
      d1.push_back(2.0 * static_cast<double>(k) * coeffs[k]);
      d2.push_back(2.0 * static_cast<double>(k) * static_cast<double>(2 * k - 1) * coeffs[k]);
    }
  }
  if (d1.empty()) d1 = d2 = {0.0};

  // Positivity on the requested domain.
  const double top = coeffs.back();
  if (!std::isfinite(rho_max) && top < 0.0)
    throw LabError(ErrorKind::invalid_argument, "conformal_poly turns negative for large rho");
  double bound_s = 1.0;
  for (double c : coeffs) bound_s = std::max(bound_s, 1.0 + std::abs(c / top));
  const double check_to = std::min(rho_max, std::sqrt(bound_s) * 1.01);
  for (int i = 0; i <= 20000; ++i) {
    const double x = check_to * i / 20000.0;
    if (x >= rho_max) break;
    if (!(horner(coeffs, x * x) > 0.0))
      throw LabError(ErrorKind::invalid_argument,
                     "conformal_poly lambda is non-positive at rho = " + std::to_string(x));
  }

  RadialProfile p;
  p.name = "conformal_poly";
  p.rho_max = rho_max;
  p.lambda = [coeffs, horner](double x) { return horner(coeffs, x * x); };
  p.dlambda = [d1, horner](double x) { return x * horner(d1, x * x); };
  p.d2lambda = [d2, horner](double x) { return horner(d2, x * x); };
  ClosedForms c;
  c.r_of_rho = [integ, horner](double rho) { return rho * horner(integ, rho * rho); };
  std::optional<double> r_max;
  if (!std::isfinite(rho_max)) r_max = kInfinity;
  return RadialKahlerModel(n, std::move(p), std::move(c), r_max);
}

RadialProfile profile_from_table(const std::vector<double>& rho, const std::vector<double>& lambda,
                                 std::string name) {
  if (rho.size() != lambda.size() || rho.size() < 4)
    throw LabError(ErrorKind::invalid_argument, "profile table needs at least 4 (rho, lambda) rows");
  if (rho.front() != 0.0) throw LabError(ErrorKind::invalid_argument, "profile table must start at rho = 0");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (i > 0 && !(rho[i] > rho[i - 1]))
      throw LabError(ErrorKind::invalid_argument, "profile table rho must increase strictly");
    if (!(lambda[i] > 0.0) || !std::isfinite(lambda[i]))
      throw LabError(ErrorKind::invalid_argument, "profile table lambda must be positive");
  }
  auto spline = std::make_shared<const EvenSpline>(rho, lambda);
  RadialProfile p;
  p.name = std::move(name);
  p.rho_max = rho.back();
  p.lambda = [spline](double x) { return spline->value(x); };
  p.dlambda = [spline](double x) { return spline->first(x); };
  p.d2lambda = [spline](double x) { return spline->second(x); };
  p.integral = [spline](double x) { return spline->integral(x); };
  // Spline lambda may dip between knots.
  for (std::size_t i = 0; i + 1 < rho.size(); ++i)
    for (int k = 1; k < 8; ++k) {
      const double x = rho[i] + (rho[i + 1] - rho[i]) * k / 8.0;
      if (!(p.lambda(x) > 0.0))
        throw LabError(ErrorKind::invalid_argument, "interpolated lambda is non-positive near rho = " +
                                                        std::to_string(x));
    }
  return p;
}

RadialProfile load_profile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorKind::io_error, "cannot open profile table " + path);
  std::string line;
  bool header = false;
  std::vector<double> rho, lam;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!header) {
      std::string a, b;
      ls >> a >> b;
      if (first != "#" || a != "rho" || b != "lambda")
        throw LabError(ErrorKind::parse_error, path + ": expected header '# rho lambda'");
      header = true;
      continue;
    }
    if (first.front() == '#') continue;
    double x = 0, y = 0;
    std::istringstream row(line);
    if (!(row >> x >> y)) throw LabError(ErrorKind::parse_error, path + ": bad row '" + line + "'");
    rho.push_back(x);
    lam.push_back(y);
  }
  if (!header) throw LabError(ErrorKind::parse_error, path + ": empty table");
  return profile_from_table(rho, lam, "custom:" + path);
}

RadialKahlerModel custom_model(RadialProfile profile, int n) {
  return RadialKahlerModel(n, std::move(profile));
}

RadialKahlerModel model_from_potential(int n, RealFn dphi, RealFn d2phi, double rho_max,
                                       std::string name) {
  RadialProfile p;
  p.name = std::move(name);
  p.rho_max = rho_max;
  p.lambda = [dphi, d2phi](double x) {
    const double t = x * x;
    const double g = dphi(t) + t * d2phi(t);
    if (!(g > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(g);
  };
  return RadialKahlerModel(n, std::move(p));
}

RadialKahlerModel builtin_model(const ModelSpec& spec) {
  if (spec.tag == "flat") return flat_model(spec.n);
  if (spec.tag == "cigar") return cigar_model(spec.n);
  if (spec.tag == "hyperbolic") return hyperbolic_model(spec.kappa, spec.n);
  if (spec.tag == "sphere") return sphere_model(spec.kappa, spec.n);
  if (spec.tag == "conformal_poly") return conformal_poly_model(spec.coeffs, spec.n, spec.rho_max);
  if (spec.tag == "custom") return custom_model(load_profile_table(spec.table_path), spec.n);
  throw LabError(ErrorKind::invalid_argument, "unknown model tag '" + spec.tag + "'");
}

double distance_from_origin(const RadialKahlerModel& model, double rho) {
  return model.r_of_rho(rho);
}

double radial_curvature(const RadialKahlerModel& model, double r) {
  if (!(r > 0.0) || !(r < model.r_max()))
    throw LabError(ErrorKind::domain, "curvature requested at r = " + std::to_string(r) +
                                          " outside (0, " + std::to_string(model.r_max()) + ")");
  const double rho = model.rho_of_r(r);
  const auto& p = model.profile();
  const bool analytic = p.dlambda && p.d2lambda;
  return curvature_from_jet(profile_jet(p, rho), rho, analytic ? 0.0 : 1e-4);
}

double model_hessian(const RadialKahlerModel& model, double r) {
  if (!(r > 0.0)) throw LabError(ErrorKind::domain, "hessian requested at r <= 0");
  if (!(r < model.r_max())) {
    if (model.compact())
      throw LabError(ErrorKind::conjugate_point,
                     "r = " + std::to_string(r) + " reaches the conjugate radius " +
                         std::to_string(model.r_max()) + " of " + model.name());
    throw LabError(ErrorKind::domain, "hessian requested at r = " + std::to_string(r) +
                                          " beyond r_max = " + std::to_string(model.r_max()));
  }
  const double rho = model.rho_of_r(r);
  const ProfileJet jet = profile_jet(model.profile(), rho);
  const double J = jet.value * rho;
  if (!(J > 0.0))
    throw LabError(ErrorKind::conjugate_point, "circumferential Jacobian vanishes at r = " +
                                                   std::to_string(r));
  const double dJ = 1.0 + rho * jet.first / jet.value;
  return dJ / (2.0 * J);
}

}  // namespace hadamard
