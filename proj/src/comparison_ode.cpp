#include "hadamard/comparison_ode.hpp"

#include "hadamard/error.hpp"
#include "hadamard/numerics/calculus.hpp"
#include "hadamard/numerics/ode.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <ostream>

namespace hadamard {

namespace {

using W1 = numerics::OdeState<double, 1>;
using W2 = numerics::OdeState<double, 2>;

constexpr double kNormalizationRadius = 1e-4;
constexpr double kLimitRadius = 1e-6;

// log sinh r, log tanh r, accurate for small and large r.
double log_sinh(double r) { return r + std::log(-std::expm1(-2.0 * r)) - std::numbers::ln2; }
double log_tanh(double x) { return std::log(-std::expm1(-2.0 * x)) - std::log1p(std::exp(-2.0 * x)); }

double slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double mx = x.mean(), my = y.mean();
  const Eigen::ArrayXd dx = x.array() - mx;
  return (dx * (y.array() - my)).sum() / dx.square().sum();
}

// The limit is extrapolated from two small radii so that an O(r) approach is
// not mistaken for a normalization error.
void set_normalization(Convexifier& c) {
  auto d = [&c](double r) { return c.normalized(r) - std::log(r); };
  c.normalization_residual = std::abs(std::expm1(d(kNormalizationRadius)));
  c.normalization_limit = std::abs(2.0 * d(0.5 * kLimitRadius) - d(kLimitRadius));
}

}  // namespace

CurvatureLowerBound CurvatureLowerBound::constant(double c) {
  CurvatureLowerBound b;
  b.kind = Kind::constant;
  b.name = "constant(" + std::to_string(c) + ")";
  b.c = c;
  b.g = [c](double) { return c; };
  return b;
}

CurvatureLowerBound CurvatureLowerBound::power_decay(double A, double eps) {
  if (!(A > 0.0) || !(eps > 0.0))
    throw LabError(ErrorKind::invalid_argument, "power_decay bound needs A > 0 and eps > 0");
  CurvatureLowerBound b;
  b.kind = Kind::power_decay;
  b.name = "power_decay(" + std::to_string(A) + "," + std::to_string(eps) + ")";
  b.A = A;
  b.eps = eps;
  b.g = [A, eps](double r) { return -A * std::pow(1.0 + r, -2.0 - eps); };
  return b;
}

CurvatureLowerBound CurvatureLowerBound::inverse_square(double C, double r0) {
  if (!(C > 0.0 && C < 0.25))
    throw LabError(ErrorKind::invalid_argument, "inverse_square bound needs 0 < C < 1/4");
  if (!(r0 > 0.0)) throw LabError(ErrorKind::invalid_argument, "inverse_square bound needs r0 > 0");
  CurvatureLowerBound b;
  b.kind = Kind::inverse_square;
  b.name = "inverse_square(" + std::to_string(C) + ")";
  b.C = C;
  b.r_min = r0;
  b.g = [C](double r) { return C / (r * r); };
  return b;
}

CurvatureLowerBound CurvatureLowerBound::cigar() {
  CurvatureLowerBound b;
  b.kind = Kind::cigar;
  b.name = "cigar";
  b.g = [](double r) {
    const double ch = std::cosh(r);
    return 2.0 / (ch * ch);
  };
  return b;
}

CurvatureLowerBound CurvatureLowerBound::custom(std::string name, RealFn g, double r_max) {
  CurvatureLowerBound b;
  b.kind = Kind::custom;
  b.name = std::move(name);
  b.g = std::move(g);
  b.r_max = r_max;
  return b;
}

CurvatureLowerBound curvature_bound_of(const RadialKahlerModel& model) {
  return CurvatureLowerBound::custom("curvature(" + model.name() + ")",
                                     [model](double r) { return radial_curvature(model, r); },
                                     model.r_max());
}

double Supersolution::dw_at(double r) const {
  if (dw) return dw(r);
  double h = std::max(1e-5, 1e-4 * r);
  h = std::min(h, 0.25 * (r - r_min));
  if (std::isfinite(r_max)) h = std::min(h, 0.25 * (r_max - r));
  return numerics::richardson_first(w, r, h).value;
}

double Supersolution::residual(double r, const CurvatureLowerBound& g) const {
  if (v && dv) {
    const double vr = v(r);
    return 0.5 * (g(r) - 3.0 * vr - r * dv(r) + r * r * vr * vr);
  }
  const double wr = w(r);
  return (dw_at(r) - wr * (1.0 - wr) / r + g(r) * r) / (2.0 * r);
}

Supersolution solve_riccati_equality(const CurvatureLowerBound& g, const RiccatiOptions& opt) {
  if (g.r_min > 0.0)
    throw LabError(ErrorKind::invalid_argument,
                   g.name + " is only a bound for r >= " + std::to_string(g.r_min) +
                       "; the equality problem needs g integrable at the origin");
  const double r0 = opt.r_start;
  const double g0 = g(r0);
  if (!std::isfinite(g0) || std::abs(g0) * r0 > 1.0)
    throw LabError(ErrorKind::invalid_argument, g.name + " is not integrable near r = 0");
  double r_end = opt.r_end;
  if (std::isfinite(g.r_max)) r_end = std::min(r_end, g.r_max * (1.0 - 1e-9));
  if (!(r_end > r0)) throw LabError(ErrorKind::invalid_argument, "empty integration range");

  auto rhs = [&g](double r, const W1& v) {
    W1 d;
    d[0] = (g(r) - 3.0 * v[0] + r * r * v[0] * v[0]) / r;
    return d;
  };
  numerics::OdeOptions<double> o;
  o.rtol = opt.rtol;
  o.atol = opt.atol;
  W1 v0;
  v0[0] = g0 / 3.0;
  // 2 r u < -1e8
  constexpr double kDiverged = 1e8;
  const double r_sw = std::min(1.0, r_end);
  auto res = numerics::integrate<double, 1>(
      rhs, r0, v0, r_sw, o, [](double r, const W1& v) { return r * r * v[0] > kDiverged; });

  Supersolution s;
  s.name = "riccati_equality[" + g.name + "]";
  s.origin_normalized = true;
  s.r_min = 0.0;
  s.r_max = res.t;
  auto diverged = [&](double r) {
    s.blow_down = r;
    if (!opt.allow_blow_down)
      throw LabError(ErrorKind::blow_down, "solution of the Riccati equality for " + g.name +
                                               " diverges at r = " + std::to_string(r));
  };
  auto head_status = res.status;
  if (head_status == numerics::OdeStatus::stopped || head_status == numerics::OdeStatus::step_underflow)
    diverged(res.t);
  else if (head_status != numerics::OdeStatus::finished)
    throw LabError(ErrorKind::convergence_failure, "Riccati integration did not finish for " + g.name);

  auto head = std::make_shared<const numerics::DenseSolution<double, 1>>(std::move(res.solution));
  std::shared_ptr<const numerics::DenseSolution<double, 1>> tail;
  if (head_status == numerics::OdeStatus::finished && r_end > r_sw) {
    // u-form beyond r_sw keeps the absolute error in w linear in r
    auto urhs = [&g](double r, const W1& u) {
      W1 d;
      d[0] = -2.0 * u[0] * u[0] - 0.5 * g(r);
      return d;
    };
    W1 u0;
    u0[0] = (1.0 - r_sw * r_sw * res.y[0]) / (2.0 * r_sw);
    auto tr = numerics::integrate<double, 1>(
        urhs, r_sw, u0, r_end, o, [](double r, const W1& u) { return 2.0 * r * u[0] < -kDiverged; });
    s.r_max = tr.t;
    if (tr.status == numerics::OdeStatus::stopped || tr.status == numerics::OdeStatus::step_underflow)
      diverged(tr.t);
    else if (tr.status != numerics::OdeStatus::finished)
      throw LabError(ErrorKind::convergence_failure, "Riccati integration did not finish for " + g.name);
    if (!tr.solution.empty())
      tail = std::make_shared<const numerics::DenseSolution<double, 1>>(std::move(tr.solution));
  }

  s.v = [head, tail, r0, r_sw, g0](double r) {
    if (r < r0) return g0 / 3.0;
    if (!tail || r <= r_sw) return (*head)(r)[0];
    return (1.0 - 2.0 * r * (*tail)(r)[0]) / (r * r);
  };
  s.dv = [head, tail, r0, r_sw](double r) {
    if (r < r0) return 0.0;
    if (!tail || r <= r_sw) return head->derivative(r)[0];
    const double u = (*tail)(r)[0];
    const double du = tail->derivative(r)[0];
    return -2.0 * (u + r * du) / (r * r) - 2.0 * (1.0 - 2.0 * r * u) / (r * r * r);
  };
  s.w = [v = s.v, tail, r_sw](double r) {
    if (tail && r > r_sw) return 2.0 * r * (*tail)(r)[0];
    return 1.0 - r * r * v(r);
  };
  s.dw = [v = s.v, dv = s.dv, tail, r_sw](double r) {
    if (tail && r > r_sw) return 2.0 * (*tail)(r)[0] + 2.0 * r * tail->derivative(r)[0];
    return -2.0 * r * v(r) - r * r * dv(r);
  };
  return s;
}

ResidualReport verify_supersolution(const Supersolution& u, const CurvatureLowerBound& g,
                                    std::span<const double> grid, double tol) {
  ResidualReport rep;
  rep.tolerance = tol;
  rep.min_residual = kInfinity;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    if (i > 0 && !(r > grid[i - 1]))
      throw LabError(ErrorKind::invalid_argument, "verification grid must be increasing");
    if (!(r > u.r_min) || !(r < u.r_max) || r < g.r_min || !(r < g.r_max))
      throw LabError(ErrorKind::domain, "grid point r = " + std::to_string(r) +
                                            " outside the domain of " + u.name + " / " + g.name);
    const double res = u.residual(r, g);
    if (!std::isfinite(res))
      throw LabError(ErrorKind::domain, u.name + " is not evaluable at r = " + std::to_string(r));
    if (res < rep.min_residual) {
      rep.min_residual = res;
      rep.argmin = r;
    }
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(res));
  }
  rep.samples = grid.size();
  rep.pass = rep.samples > 0 && rep.min_residual >= -tol;
  return rep;
}

Convexifier solve_convexifier(const Supersolution& u, const ConvexifierOptions& opt) {
  if (!u.origin_normalized)
    throw LabError(ErrorKind::invalid_argument,
                   "solve_convexifier needs an origin-normalized supersolution (2 u r -> 1)");
  const double r0 = opt.r_start;
  double r_end = std::min(opt.r_end, u.r_max);
  if (u.blow_down) r_end = std::min(r_end, *u.blow_down * (1.0 - 1e-7));
  if (!(r_end > r0)) throw LabError(ErrorKind::invalid_argument, "empty convexifier range");

  // y = (E, H): E = int_0^r (w - 1)/t, H = int_0^r (e^-E - 1)/t. Below r0
  // both are evaluated by quadrature; the copy keeps u alive inside h.
  auto held = std::make_shared<const Supersolution>(u);
  auto e_rate = [held](double t) { return held->v ? -t * held->v(t) : (held->w(t) - 1.0) / t; };
  auto E_head = [e_rate](double r) { return numerics::gauss_legendre(e_rate, 0.0, r); };
  auto H_head = [E_head](double r) {
    return numerics::gauss_legendre([&](double t) { return std::expm1(-E_head(t)) / t; }, 0.0, r);
  };
  auto rhs = [&e_rate](double r, const W2& y) {
    W2 d;
    d[0] = e_rate(r);
    d[1] = std::expm1(-y[0]) / r;
    return d;
  };
  W2 y0;
  y0[0] = E_head(r0);
  y0[1] = H_head(r0);
  numerics::OdeOptions<double> o;
  o.rtol = opt.rtol;
  o.atol = opt.atol;
  auto res = numerics::integrate<double, 2>(rhs, r0, y0, r_end, o,
                                            [](double, const W2& y) { return !y.allFinite(); });
  if (res.status != numerics::OdeStatus::finished)
    throw LabError(ErrorKind::blow_down, "integral of u diverges before r = " + std::to_string(r_end) +
                                             " (stopped at " + std::to_string(res.t) + ")");

  auto sol = std::make_shared<const numerics::DenseSolution<double, 2>>(std::move(res.solution));
  Convexifier c;
  c.name = "convexifier[" + u.name + "]";
  c.r_max = res.t;
  c.h = [sol, r0, H_head](double r) { return std::log(r) + (r < r0 ? H_head(r) : (*sol)(r)[1]); };
  c.h_prime = [sol, r0, E_head](double r) {
    return std::exp(-(r < r0 ? E_head(r) : (*sol)(r)[0])) / r;
  };
  c.h_second = [sol, r0, E_head, e_rate](double r) {
    if (r < r0) return -std::exp(-E_head(r)) * (r * e_rate(r) + 1.0) / (r * r);
    const double E = (*sol)(r)[0], dE = sol->derivative(r)[0];
    return -std::exp(-E) * (r * dE + 1.0) / (r * r);
  };
  set_normalization(c);
  return c;
}

double convexifier_residual(const Convexifier& h, const Supersolution& u, double r) {
  double h2;
  if (h.h_second) {
    h2 = h.h_second(r);
  } else {
    const double step = std::min(std::max(1e-5, 1e-4 * r), 0.25 * r);
    h2 = numerics::richardson_first(h.h_prime, r, step).value;
  }
  return 0.5 * h2 + h.h_prime(r) * u.u(r);
}

const std::vector<std::string>& catalog_tags() {
  static const std::vector<std::string> tags = {"nonneg", "lower_bound_minus_one",
                                                "lower_bound_plus_one", "cigar", "power_decay"};
  return tags;
}

namespace {

void check_power_decay(const CatalogParams& p) {
  if (!(p.A > 0.0) || !(p.eps > 0.0))
    throw LabError(ErrorKind::invalid_argument, "power_decay needs A > 0 and eps > 0");
}

void check_kappa(const CatalogParams& p) {
  if (!(p.kappa > 0.0)) throw LabError(ErrorKind::invalid_argument, "kappa must be positive");
}

// int_0^r (h'(t) - 1/t) dt for the power-decay convexifier.
double power_decay_log_correction(double A, double eps, double r) {
  auto q = [A, eps](double t) {
    if (t <= 0.0) return -2.0 * A;
    const double e = 2.0 * A / eps * std::expm1(-eps * std::log1p(t));
    return std::expm1(e) / t;
  };
  const double head = numerics::integrate(q, 0.0, std::min(r, 1.0), 1e-11);
  if (r <= 1.0) return head;
  auto tail = [&q](double s) {
    const double t = std::exp(s);
    return t * q(t);
  };
  return head + numerics::integrate(tail, 0.0, std::log(r), 1e-11);
}

}  // namespace

Convexifier closed_form_convexifier(const std::string& tag, const CatalogParams& params) {
  Convexifier c;
  c.name = tag;
  if (tag == "nonneg") {
    c.h = [](double r) { return std::log(r); };
    c.h_prime = [](double r) { return 1.0 / r; };
    c.h_second = [](double r) { return -1.0 / (r * r); };
  } else if (tag == "lower_bound_minus_one") {
    check_kappa(params);
    const double s = std::sqrt(params.kappa);
    c.h = [s](double r) { return log_tanh(0.5 * s * r); };
    c.h_prime = [s](double r) { return s / std::sinh(s * r); };
    c.h_second = [s](double r) {
      const double sh = std::sinh(s * r);
      return -s * s * std::cosh(s * r) / (sh * sh);
    };
    c.normalization_offset = std::log(2.0 / s);
  } else if (tag == "lower_bound_plus_one") {
    check_kappa(params);
    const double s = std::sqrt(params.kappa);
    c.h = [s](double r) { return std::log(std::tan(0.5 * s * r)); };
    c.h_prime = [s](double r) { return s / std::sin(s * r); };
    c.h_second = [s](double r) {
      const double sn = std::sin(s * r);
      return -s * s * std::cos(s * r) / (sn * sn);
    };
    c.normalization_offset = std::log(2.0 / s);
    c.r_max = std::numbers::pi / s;
  } else if (tag == "cigar") {
    c.h = [](double r) { return log_sinh(r); };
    c.h_prime = [](double r) { return 1.0 / std::tanh(r); };
    c.h_second = [](double r) {
      const double sh = std::sinh(r);
      return -1.0 / (sh * sh);
    };
  } else if (tag == "power_decay") {
    check_power_decay(params);
    const double A = params.A, eps = params.eps;
    const double anchor = power_decay_log_correction(A, eps, 1.0);
    // Stated as int_1^r h'(t) dt.
    c.h = [A, eps, anchor](double r) {
      return std::log(r) + power_decay_log_correction(A, eps, r) - anchor;
    };
    c.h_prime = [A, eps](double r) {
      return std::exp(2.0 * A / eps * std::expm1(-eps * std::log1p(r))) / r;
    };
    c.h_second = [A, eps, hp = c.h_prime](double r) {
      return -hp(r) * (1.0 / r + 2.0 * A * std::pow(1.0 + r, -1.0 - eps));
    };
    c.normalization_offset = anchor;
  } else {
    throw LabError(ErrorKind::invalid_argument, "unknown convexifier tag '" + tag + "'");
  }
  set_normalization(c);
  return c;
}

Supersolution closed_form_supersolution(const std::string& tag, const CatalogParams& params) {
  Supersolution s;
  s.name = tag;
  s.origin_normalized = true;
  if (tag == "nonneg") {
    s.w = [](double) { return 1.0; };
    s.dw = [](double) { return 0.0; };
  } else if (tag == "lower_bound_minus_one") {
    check_kappa(params);
    const double k = std::sqrt(params.kappa);
    s.w = [k](double r) { return k * r / std::tanh(k * r); };
    s.dw = [k](double r) {
      const double sh = std::sinh(k * r);
      return k / std::tanh(k * r) - k * k * r / (sh * sh);
    };
  } else if (tag == "lower_bound_plus_one") {
    check_kappa(params);
    const double k = std::sqrt(params.kappa);
    s.w = [k](double r) { return k * r / std::tan(k * r); };
    s.dw = [k](double r) {
      const double sn = std::sin(k * r);
      return k / std::tan(k * r) - k * k * r / (sn * sn);
    };
    s.r_max = std::numbers::pi / k;
  } else if (tag == "cigar") {
    s.w = [](double r) { return 2.0 * r / std::sinh(2.0 * r); };
    s.dw = [](double r) { return 2.0 / std::sinh(2.0 * r) * (1.0 - 2.0 * r / std::tanh(2.0 * r)); };
  } else if (tag == "power_decay") {
    check_power_decay(params);
    const double A = params.A, eps = params.eps;
    s.w = [A, eps](double r) { return 1.0 + 2.0 * A * r * std::pow(1.0 + r, -1.0 - eps); };
    s.dw = [A, eps](double r) { return 2.0 * A * std::pow(1.0 + r, -2.0 - eps) * (1.0 - eps * r); };
  } else {
    throw LabError(ErrorKind::invalid_argument, "unknown supersolution tag '" + tag + "'");
  }
  return s;
}

CurvatureLowerBound closed_form_bound(const std::string& tag, const CatalogParams& params) {
  if (tag == "nonneg") return CurvatureLowerBound::constant(0.0);
  if (tag == "lower_bound_minus_one") {
    check_kappa(params);
    return CurvatureLowerBound::constant(-params.kappa);
  }
  if (tag == "lower_bound_plus_one") {
    check_kappa(params);
    auto b = CurvatureLowerBound::constant(params.kappa);
    b.r_max = std::numbers::pi / std::sqrt(params.kappa);
    return b;
  }
  if (tag == "cigar") return CurvatureLowerBound::cigar();
  if (tag == "power_decay") {
    check_power_decay(params);
    return CurvatureLowerBound::power_decay(params.A, params.eps);
  }
  throw LabError(ErrorKind::invalid_argument, "unknown bound tag '" + tag + "'");
}

Supersolution inverse_square_supersolution(double C, double B) {
  if (!(C > 0.0 && C < 0.25))
    throw LabError(ErrorKind::invalid_argument, "inverse-square supersolution needs 0 < C < 1/4");
  if (!(B > 0.0)) throw LabError(ErrorKind::invalid_argument, "B must be positive");
  const double disc = std::sqrt(1.0 - 4.0 * C);
  const double a = (1.0 + disc) / 4.0;
  const double b = C / (4.0 * a);
  const double k = 2.0 * a - 2.0 * b;
  Supersolution s;
  s.name = "inverse_square_supersolution";
  s.origin_normalized = false;
  s.r_min = std::pow(B, -1.0 / k);
  s.w = [a, b, k, B](double r) {
    const double P = B * std::pow(r, k);
    return 2.0 * (a * P - b) / (P - 1.0);
  };
  s.dw = [a, b, k, B](double r) {
    const double P = B * std::pow(r, k);
    return -2.0 * k * P * (a - b) / (r * (P - 1.0) * (P - 1.0));
  };
  return s;
}

double growth_exponent(const Convexifier& h, double r_lo, double r_hi) {
  if (!(r_lo > 1.0)) throw LabError(ErrorKind::invalid_argument, "growth window must start above r = 1");
  if (!(r_hi >= 4.0 * r_lo * (1.0 - 1e-12)))
    throw LabError(ErrorKind::invalid_argument, "growth window too narrow (need r_hi >= 4 r_lo)");
  if (!(r_hi <= h.r_max))
    throw LabError(ErrorKind::domain, "growth window exceeds the convexifier's domain");
  constexpr int kSamples = 64;
  Eigen::VectorXd lr(kSamples), hv(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double t = std::log(r_lo) + (std::log(r_hi) - std::log(r_lo)) * i / (kSamples - 1);
    lr[i] = t;
    hv[i] = h.h(std::exp(t));
  }
  if (!hv.allFinite()) throw LabError(ErrorKind::domain, "convexifier not finite on the growth window");
  constexpr int half = kSamples / 2;
  const double first = slope(lr.head(half), hv.head(half));
  const double second = slope(lr.tail(half), hv.tail(half));
  if (first > 0.0 && second > 1.1 * first) return kInfinity;
  return slope(lr, hv);
}

void write_samples(std::ostream& os, const RealFn& f, std::span<const double> grid,
                   const std::string& label) {
  os << "# r " << label << "\n";
  char buf[64];
  for (double r : grid) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", r, f(r));
    os << buf;
  }
}

}  // namespace hadamard
