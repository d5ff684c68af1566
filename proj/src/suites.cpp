#include "hadamard/suites.hpp"

#include "hadamard/comparison_ode.hpp"
#include "hadamard/dimension.hpp"
#include "hadamard/error.hpp"
#include "hadamard/growth.hpp"
#include "hadamard/radial_metric.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace hadamard {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Convexifier auto_convexifier(const RadialKahlerModel& model) {
  return solve_convexifier(solve_riccati_equality(curvature_bound_of(model)));
}

double spread_of(const GrowthCurve& curve, const Convexifier& h, double d) {
  double lo = kInfinity, hi = -kInfinity;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double q = curve.log_values[i] - d * h.h(curve.radii[i]);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return hi - lo;
}

Eigen::VectorXcd point_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  Eigen::VectorXcd c(1);
  c[0] = std::polar(rho, theta);
  return c;
}

// 1. log M - d h constant on the equality models.
CriterionResult sharpness(std::uint64_t) {
  struct Case {
    std::string label;
    RadialKahlerModel model;
    std::string f;
    double d;
    std::string tag;
    double lo, hi;
  };
  const double pi = std::numbers::pi;
  std::vector<Case> cases = {
      {"flat z", flat_model(), "z", 1, "nonneg", 1e-2, 1e2},
      {"flat z^2", flat_model(), "z^2", 2, "nonneg", 1e-2, 1e2},
      {"flat z^5", flat_model(), "z^5", 5, "nonneg", 1e-2, 1e2},
      {"cigar z", cigar_model(), "z", 1, "cigar", 1e-2, 10.0},
      {"hyperbolic z", hyperbolic_model(), "z", 1, "lower_bound_minus_one", 1e-2, 10.0},
      {"sphere z", sphere_model(), "z", 1, "lower_bound_plus_one", 1e-2, pi - 0.1},
  };
  CriterionResult res;
  res.pass = true;
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto curve = growth_curve(c.model, parse_holo_poly(c.f), {}, log_grid(c.lo, c.hi, 50));
    const double closed = spread_of(curve, closed_form_convexifier(c.tag), c.d);
    const double numeric = spread_of(curve, auto_convexifier(c.model), c.d);
    const bool ok = closed <= 1e-6 && numeric <= 1e-6;
    res.pass = res.pass && ok;
    worst = std::max({worst, closed, numeric});
    res.details["cases"].push_back({{"case", c.label},
                                    {"h", c.tag},
                                    {"radii", {c.lo, c.hi, 50}},
                                    {"spread_closed_h", closed},
                                    {"spread_numeric_h", numeric},
                                    {"pass", ok}});
  }
  res.summary = "max spread of log M - d h: " + fmt(worst) + " (limit 1e-6)";
  return res;
}

// 2. Convexity in log r on nonnegatively curved models.
CriterionResult sufficiency(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3);
  const Convexifier logr = closed_form_convexifier("nonneg");
  MaxModulusOptions opt;
  opt.seed = seed;
  CriterionResult res;
  res.pass = true;
  double worst_raw = kInfinity, worst_scaled = kInfinity;
  std::string worst_case;
  auto record = [&](const std::string& label, const ConvexityReport& rep) {
    res.pass = res.pass && rep.pass;
    if (rep.min_scaled_difference < worst_scaled) {
      worst_scaled = rep.min_scaled_difference;
      worst_case = label;
    }
    worst_raw = std::min(worst_raw, rep.min_second_difference);
  };
  const auto radii = log_grid(0.2, 5.0, 8);
  int failures = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = dim(rng);
    const HoloPoly f = random_polynomial(rng, n, 5);
    const auto rep = three_circle_check(growth_curve(flat_model(n), f, {}, radii, opt), logr, 1e-6);
    if (!rep.pass) {
      ++failures;
      res.details["failures"].push_back({{"n", n}, {"f", f.to_string()}, {"min_scaled", rep.min_scaled_difference}});
    }
    record("flat n=" + std::to_string(n) + " f=" + f.to_string(), rep);
  }
  const auto off_radii = log_grid(0.2, 2.0, 6);
  for (int k = 0; k < 20; ++k) {
    const bool cigar = k >= 10;
    const RadialKahlerModel model = cigar ? cigar_model() : flat_model();
    const Eigen::VectorXcd c = point_in_disc(rng, 1.0);
    const HoloPoly f = random_polynomial(rng, 1, 5);
    const auto rep = three_circle_check(growth_curve(model, f, c, off_radii, opt), logr, 1e-6);
    if (!rep.pass) {
      ++failures;
      res.details["failures"].push_back({{"model", model.name()},
                                         {"center", {c[0].real(), c[0].imag()}},
                                         {"f", f.to_string()},
                                         {"min_scaled", rep.min_scaled_difference}});
    }
    record(model.name() + " off-center", rep);
  }
  res.details["seed"] = seed;
  res.details["configurations"] = 120;
  res.details["min_second_difference"] = worst_raw;
  res.details["min_scaled_difference"] = worst_scaled;
  res.details["worst_case"] = worst_case;
  res.summary = "120 configurations, " + std::to_string(failures) + " failing; min scaled defect " +
                fmt(worst_scaled) + " (limit -1e-6)";
  return res;
}

// 3. Hyperbolic plane, f = z, h = log r.
CriterionResult necessity_detection(std::uint64_t) {
  const std::vector<double> radii = {0.5, 1.0, 1.5};
  const auto curve = growth_curve(hyperbolic_model(), parse_holo_poly("z"), {}, radii);
  const auto rep = three_circle_check(curve, closed_form_convexifier("nonneg"), 1e-6);
  auto lm = [](double r) { return std::log(std::tanh(r / 2.0)); };
  const double oracle = (lm(1.5) - lm(1.0)) / std::log(1.5) - (lm(1.0) - lm(0.5)) / std::log(2.0);
  CriterionResult res;
  res.pass = !rep.pass && rep.min_second_difference < -1e-3 && std::abs(rep.min_second_difference - oracle) <= 1e-9;
  res.details = {{"radii", radii},
                 {"min_second_difference", rep.min_second_difference},
                 {"oracle", oracle},
                 {"verdict", rep.pass ? "pass" : "violation"}};
  res.summary = "defect " + fmt(rep.min_second_difference) + " (oracle " + fmt(oracle) + "), verdict " +
                (rep.pass ? "pass" : "violation");
  return res;
}

// 4. Small-radius deficit against H(0)/12.
CriterionResult deficit_law(std::uint64_t) {
  struct Case {
    RadialKahlerModel model;
    double exact;
  };
  std::vector<Case> cases = {{flat_model(), 0.0},
                             {sphere_model(), 1.0 / 12.0},
                             {cigar_model(), 1.0 / 6.0},
                             {hyperbolic_model(), -1.0 / 12.0},
                             {conformal_poly_model({1.0, 1.0}), -1.0 / 3.0}};
  CriterionResult res;
  res.pass = true;
  double worst = 0.0;
  for (const auto& c : cases) {
    const DeficitFit fit = necessity_deficit(c.model, default_deficit_grid(c.model));
    bool ok;
    double rel = 0.0;
    if (c.exact == 0.0) {
      ok = std::abs(fit.c2) <= 1e-9 && std::abs(fit.predicted) <= 1e-9;
    } else {
      rel = std::max(std::abs(fit.c2 - fit.predicted) / std::abs(fit.predicted),
                     std::abs(fit.c2 - c.exact) / std::abs(c.exact));
      ok = rel <= 0.05;
      worst = std::max(worst, rel);
    }
    res.pass = res.pass && ok;
    res.details["profiles"].push_back({{"model", c.model.name()},
                                       {"c2", fit.c2},
                                       {"predicted", fit.predicted},
                                       {"exact", c.exact},
                                       {"condition", fit.condition},
                                       {"pass", ok}});
  }
  res.summary = "five profiles, worst relative deviation " + fmt(worst) + " (limit 0.05)";
  return res;
}

// 5. Closed-form catalog against the numeric solvers.
CriterionResult ode_catalog(std::uint64_t) {
  struct Case {
    std::string tag;
    CatalogParams params;
  };
  std::vector<Case> cases = {{"nonneg", {}},
                             {"lower_bound_minus_one", {}},
                             {"lower_bound_plus_one", {}},
                             {"cigar", {}},
                             {"power_decay", {1.0, 0.05, 0.49}},
                             {"power_decay", {1.0, 1.0, 0.4}}};
  CriterionResult res;
  res.pass = true;
  double worst_residual = 0.0, worst_match = 0.0;
  for (const auto& c : cases) {
    const auto g = closed_form_bound(c.tag, c.params);
    const auto u = closed_form_supersolution(c.tag, c.params);
    const auto h = closed_form_convexifier(c.tag, c.params);
    const bool equality = c.tag != "power_decay";
    const double hi = std::min(20.0, u.r_max - 0.1);
    const auto grid = log_grid(1e-3, hi, 400);

    double riccati = 0.0, conv = 0.0;
    for (double r : grid) {
      riccati = std::max(riccati, std::abs(u.residual(r, g)));
      conv = std::max(conv, std::abs(convexifier_residual(h, u, r)));
    }
    // 2 u r -> 1, by linear extrapolation to r = 0.
    const double u_norm = std::abs(2.0 * u.w(5e-7) - u.w(1e-6) - 1.0);

    const Supersolution un = equality ? solve_riccati_equality(g) : u;
    const Convexifier hn = solve_convexifier(un);
    double du = 0.0, dh = 0.0;
    const double shift = h.h(1.0) - hn.h(1.0);
    for (double r : grid) {
      if (equality) du = std::max(du, std::abs(un.u(r) - u.u(r)) / std::max(1.0, std::abs(u.u(r))));
      dh = std::max(dh, std::abs(hn.h(r) + shift - h.h(r)));
    }
    const double residual = std::max({equality ? riccati : 0.0, conv, u_norm, h.normalization_limit});
    const double match = std::max(du, dh);
    const bool ok = residual <= 1e-8 && match <= 1e-7;
    res.pass = res.pass && ok;
    worst_residual = std::max(worst_residual, residual);
    worst_match = std::max(worst_match, match);
    Json entry = {{"tag", c.tag}};
    if (!equality) entry["params"] = {{"A", c.params.A}, {"eps", c.params.eps}};
    entry["domain"] = {1e-3, hi};
    entry["riccati_residual"] = riccati;
    entry["riccati_is_equality"] = equality;
    entry["convexifier_residual"] = conv;
    entry["u_normalization"] = u_norm;
    entry["h_normalization_limit"] = h.normalization_limit;
    entry["h_normalization_offset"] = h.normalization_offset;
    entry["numeric_u_deviation"] = du;
    entry["numeric_h_deviation"] = dh;
    entry["additive_constant"] = shift;
    entry["pass"] = ok;
    res.details["pairs"].push_back(entry);
  }
  res.summary = "six pairs, worst residual " + fmt(worst_residual) + " (limit 1e-8), worst numeric deviation " +
                fmt(worst_match) + " (limit 1e-7)";
  return res;
}

RadialKahlerModel tabulated_one_plus_rho2() {
  std::vector<double> rho, lam;
  for (int i = 0; i <= 600; ++i) {
    const double x = 3.0 * i / 600.0;
    rho.push_back(x);
    lam.push_back(1.0 + x * x);
  }
  return custom_model(profile_from_table(rho, lam, "custom:1+rho^2"));
}

// 6. Hessian of the distance equals the Riccati solution for the model's curvature.
CriterionResult jacobi_oracle(std::uint64_t) {
  std::vector<RadialKahlerModel> models = {flat_model(),     cigar_model(),
                                           hyperbolic_model(), sphere_model(),
                                           conformal_poly_model({1.0, 1.0}), tabulated_one_plus_rho2()};
  CriterionResult res;
  res.pass = true;
  double worst = 0.0;
  for (const auto& m : models) {
    const double hi = std::min(5.0, m.r_max() - 0.05);
    RiccatiOptions opt;
    opt.r_end = hi + 0.01;
    const auto u = solve_riccati_equality(curvature_bound_of(m), opt);
    double dev = 0.0, at = 0.0;
    for (double r : lin_grid(0.05, hi, 100)) {
      const double e = std::abs(model_hessian(m, r) - u.u(r));
      if (e > dev) {
        dev = e;
        at = r;
      }
    }
    const bool ok = dev <= 1e-6;
    res.pass = res.pass && ok;
    worst = std::max(worst, dev);
    res.details["models"].push_back(
        {{"model", m.name()}, {"range", {0.05, hi}}, {"max_deviation", dev}, {"at", at}, {"pass", ok}});
  }
  res.summary = "six models, max |hessian - u| " + fmt(worst) + " (limit 1e-6)";
  return res;
}

// 7. The power-decay supersolution is a supersolution.
CriterionResult power_decay_sign(std::uint64_t) {
  const std::vector<std::pair<double, double>> params = {{0.05, 0.49}, {1.0, 0.4}, {2.0, 0.25}};
  const auto grid = log_grid(1e-3, 50.0, 2000);
  CriterionResult res;
  res.pass = true;
  double worst = kInfinity;
  for (auto [A, eps] : params) {
    const CatalogParams p{1.0, A, eps};
    const auto rep = verify_supersolution(closed_form_supersolution("power_decay", p), closed_form_bound("power_decay", p),
                                          grid);
    const bool ok = rep.pass && rep.min_residual >= 0.0;
    res.pass = res.pass && ok;
    worst = std::min(worst, rep.min_residual);
    res.details["cases"].push_back(
        {{"A", A}, {"eps", eps}, {"min_residual", rep.min_residual}, {"argmin", rep.argmin}, {"pass", ok}});
  }
  res.summary = "three parameter pairs on [1e-3, 50], min residual " + fmt(worst) + " (must be >= 0)";
  return res;
}

std::uint64_t count_monomials(int n, int budget) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (int k = 0; k <= budget; ++k) total += count_monomials(n - 1, budget - k);
  return total;
}

// 8. Dimension arithmetic.
CriterionResult dimension_arithmetic(std::uint64_t) {
  CriterionResult res;
  bool enum_ok = true;
  int checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (int twice = 0; twice <= 20; ++twice) {
      const double d = 0.5 * twice;
      const DimValue v = dim_poly_space(n, d);
      ++checked;
      if (v.infinite || v.count != count_monomials(n, static_cast<int>(std::floor(d)))) enum_ok = false;
    }
  bool trivial_ok = true, sharp_ok = true;
  for (int n = 1; n <= 4; ++n) {
    const auto t = power_decay_regimes(0.05, 0.49, 0.7, n);
    trivial_ok = trivial_ok && t.regime == "trivial" && t.bound == DimValue{1, false};
    for (auto [A, eps] : std::vector<std::pair<double, double>>{{0.05, 0.49}, {0.05, 0.4}, {0.03, 0.3}}) {
      const auto s = power_decay_regimes(A, eps, 2.0, n);
      const std::uint64_t expect = static_cast<std::uint64_t>((n + 2) * (n + 1) / 2);
      sharp_ok = sharp_ok && s.regime == "sharp" && s.bound == DimValue{expect, false} && s.witness;
    }
  }
  const auto roots = inverse_square_roots(0.18);
  auto quad = [](double x) { return 2.0 * x * x - x + 0.09; };
  const double qres = std::max(std::abs(quad(roots.a)), std::abs(quad(roots.b)));
  const bool roots_ok = std::abs(roots.a - 0.38229) <= 5e-6 && std::abs(roots.b - 0.11771) <= 5e-6 && qres <= 1e-12;
  res.pass = enum_ok && trivial_ok && sharp_ok && roots_ok;
  res.details = {{"enumeration_cases", checked},
                 {"enumeration_match", enum_ok},
                 {"trivial_regime", trivial_ok},
                 {"sharp_regime", sharp_ok},
                 {"roots", {{"a", roots.a}, {"b", roots.b}, {"quadratic_residual", qres}, {"pass", roots_ok}}}};
  res.summary = std::string("enumeration ") + (enum_ok ? "ok" : "MISMATCH") + ", trivial " +
                (trivial_ok ? "ok" : "FAIL") + ", sharp " + (sharp_ok ? "ok" : "FAIL") + ", roots a=" +
                fmt(roots.a) + " b=" + fmt(roots.b) + " residual " + fmt(qres);
  return res;
}

// Laplace-Beltrami of P on the unit sphere of R^m via central differences of
// the degree-zero extension P(x / |x|).
double spherical_laplacian_ratio(const std::function<double(const Eigen::VectorXd&)>& P, const Eigen::VectorXd& x) {
  const double step = 1e-3;
  auto ext = [&](const Eigen::VectorXd& y) { return P(y / y.norm()); };
  double lap = 0.0;
  const double p0 = ext(x);
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x, b = x;
    a[i] += step;
    b[i] -= step;
    lap += (ext(a) - 2.0 * p0 + ext(b)) / (step * step);
  }
  return -lap / p0;
}

// 9. Homogeneity and cone exponents.
CriterionResult homogeneity(std::uint64_t seed) {
  CriterionResult res;
  HomogeneityOptions opt;
  opt.seed = seed;
  const auto f = parse_holo_poly("z^2+z");
  std::vector<double> values;
  for (double r : {1e2, 1e3, 1e4}) {
    const auto rep = homogeneity_check(flat_model(), f, 2.0, r, opt);
    values.push_back(rep.value);
    res.details["homogeneity"].push_back({{"r", r}, {"value", rep.value}, {"d", rep.d}});
  }
  const bool decreasing = values[1] < values[0] && values[2] < values[1];
  const bool small = values[0] <= 0.05;

  double round_trip = 0.0;
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 7.0})
    for (int m : {2, 3, 4, 8})
      round_trip = std::max(round_trip, std::abs(cone_exponent(separation_eigenvalue(alpha, m), m) - alpha));
  bool flat_ok = true;
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 6; ++d)
      flat_ok = flat_ok && separation_eigenvalue(d, 2 * n) == static_cast<double>(d * (2 * n + d - 2)) &&
                std::abs(cone_exponent(d * (2 * n + d - 2), 2 * n) - d) <= 1e-12;

  // Re(z1^d) is harmonic and homogeneous of degree d on R^{2n}.
  double fd = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 3; ++d) {
      auto P = [d](const Eigen::VectorXd& y) { return std::pow(Complex(y[0], y[1]), d).real(); };
      Eigen::VectorXd x = Eigen::VectorXd::Constant(2 * n, 0.2);
      x[0] = 0.9;
      x[1] = 0.1;
      x.normalize();
      const double lam = spherical_laplacian_ratio(P, x);
      fd = std::max(fd, std::abs(lam - separation_eigenvalue(d, 2 * n)) / separation_eigenvalue(d, 2 * n));
    }
  const bool fd_ok = fd <= 1e-4;
  res.pass = decreasing && small && round_trip <= 1e-12 && flat_ok && fd_ok;
  res.details["decreasing"] = decreasing;
  res.details["round_trip_error"] = round_trip;
  res.details["flat_eigenvalues"] = flat_ok;
  res.details["finite_difference_relative_error"] = fd;
  res.summary = "values " + fmt(values[0]) + ", " + fmt(values[1]) + ", " + fmt(values[2]) +
                (decreasing ? " decreasing" : " NOT decreasing") + "; round trip " + fmt(round_trip) +
                "; spherical Laplacian check " + fmt(fd);
  return res;
}

// 10. Shooting distances against closed forms.
CriterionResult geodesic_engine(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CriterionResult res;
  double worst = 0.0, asym = 0.0, tri = -kInfinity, radial = 0.0;
  using Closed = std::function<double(Complex, Complex)>;
  struct Case {
    RadialKahlerModel model;
    double disc;
    Closed exact;
  };
  std::vector<Case> cases = {
      {hyperbolic_model(), 0.8,
       [](Complex p, Complex q) {
         return std::acosh(1.0 + 2.0 * std::norm(p - q) / ((1.0 - std::norm(p)) * (1.0 - std::norm(q))));
       }},
      {sphere_model(), 1.0,
       [](Complex p, Complex q) { return 2.0 * std::atan(std::abs(p - q) / std::abs(1.0 + std::conj(p) * q)); }},
  };
  int pairs = 0;
  for (const auto& c : cases) {
    int done = 0;
    while (done < 50) {
      const Complex p = point_in_disc(rng, c.disc)[0];
      const Complex q = point_in_disc(rng, c.disc)[0];
      const double exact = c.exact(p, q);
      if (exact > std::numbers::pi - 0.3 || exact < 1e-3) continue;
      const double dpq = geodesic_distance(c.model, p, q);
      worst = std::max(worst, std::abs(dpq - exact));
      if (done % 5 == 0) {
        asym = std::max(asym, std::abs(dpq - geodesic_distance(c.model, q, p)));
        const Complex s = point_in_disc(rng, c.disc)[0];
        if (c.exact(p, s) < std::numbers::pi - 0.3 && c.exact(s, q) < std::numbers::pi - 0.3)
          tri = std::max(tri, dpq - geodesic_distance(c.model, p, s) - geodesic_distance(c.model, s, q));
        radial = std::max(radial, std::abs(geodesic_distance(c.model, 0.0, p) - c.model.r_of_rho(std::abs(p))));
      }
      ++done;
      ++pairs;
    }
  }
  res.pass = worst <= 1e-5 && asym <= 1e-8 && tri <= 1e-8 && radial <= 1e-8;
  res.details = {{"pairs", pairs},
                 {"max_error", worst},
                 {"max_asymmetry", asym},
                 {"max_triangle_excess", tri},
                 {"max_radial_mismatch", radial}};
  res.summary = std::to_string(pairs) + " pairs, max error " + fmt(worst) + " (limit 1e-5), asymmetry " + fmt(asym) +
                ", triangle excess " + fmt(tri);
  return res;
}

// Sharp monotonicity. Flat and cigar use d = deg f with log M - d h
// nonincreasing; the nondecreasing form uses the vanishing order at the origin.
CriterionResult monotonicity(std::uint64_t seed, Direction dir) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 2);
  struct Case {
    std::string tag;
    std::string h;
    double hi;
  };
  std::vector<Case> cases = {{"flat", "nonneg", 5.0}, {"cigar", "cigar", 4.0}};
  if (dir == Direction::nondecreasing) cases.push_back({"sphere", "lower_bound_plus_one", std::numbers::pi - 0.1});
  MaxModulusOptions opt;
  opt.seed = seed;
  CriterionResult res;
  res.pass = true;
  double worst = -kInfinity;
  int total = 0, failures = 0;
  for (const auto& c : cases) {
    const Convexifier h = closed_form_convexifier(c.h);
    for (int k = 0; k < 10; ++k) {
      ModelSpec spec;
      spec.tag = c.tag;
      spec.n = dim(rng);
      const auto model = builtin_model(spec);
      const HoloPoly f = random_polynomial(rng, spec.n, 4);
      const double d = dir == Direction::nonincreasing ? f.degree() : f.vanishing_order();
      const auto curve = growth_curve(model, f, {}, log_grid(0.1, c.hi, 12), opt);
      const auto rep = monotonicity_check(curve, h, d, dir, 1e-7);
      ++total;
      worst = std::max(worst, rep.worst_step);
      if (!rep.pass) {
        ++failures;
        res.details["failures"].push_back({{"model", c.tag}, {"n", spec.n}, {"f", f.to_string()}, {"worst_step", rep.worst_step}});
      }
      res.pass = res.pass && rep.pass;
    }
  }
  res.details["configurations"] = total;
  res.details["worst_adverse_step"] = worst;
  res.summary = std::to_string(total) + " configurations, " + std::to_string(failures) +
                " failing; worst adverse step " + fmt(worst) + " (slack 1e-7 (1+|log M|))";
  return res;
}

struct Entry {
  std::string name;
  std::function<CriterionResult(std::uint64_t)> fn;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"1", {"sharpness / equality models", sharpness}},
      {"2", {"three-circle sufficiency", sufficiency}},
      {"3", {"necessity detection", necessity_detection}},
      {"4", {"deficit law", deficit_law}},
      {"5", {"ODE catalog", ode_catalog}},
      {"6", {"Jacobi oracle", jacobi_oracle}},
      {"7", {"power-decay sign", power_decay_sign}},
      {"8", {"dimension arithmetic", dimension_arithmetic}},
      {"9", {"homogeneity and cone exponents", homogeneity}},
      {"10", {"geodesic engine", geodesic_engine}},
      {"mono-I", {"sharp monotonicity, nonincreasing", [](std::uint64_t s) { return monotonicity(s, Direction::nonincreasing); }}},
      {"mono-II", {"sharp monotonicity, nondecreasing", [](std::uint64_t s) { return monotonicity(s, Direction::nondecreasing); }}},
  };
  return r;
}

}  // namespace

HoloPoly random_polynomial(std::mt19937_64& rng, int n, int max_degree) {
  std::uniform_int_distribution<int> deg_dist(1, max_degree);
  std::uniform_int_distribution<int> terms_dist(1, 4);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int deg = deg_dist(rng);
  const int terms = terms_dist(rng);
  std::map<MultiIndex, Complex> coeffs;
  for (int t = 0; t < terms; ++t) {
    // the first term carries the full degree
    int budget = t == 0 ? deg : std::uniform_int_distribution<int>(0, deg)(rng);
    MultiIndex alpha(n, 0);
    for (int i = 0; i < n - 1; ++i) {
      alpha[i] = std::uniform_int_distribution<int>(0, budget)(rng);
      budget -= alpha[i];
    }
    alpha[n - 1] = budget;
    std::shuffle(alpha.begin(), alpha.end(), rng);
    coeffs[alpha] += Complex(normal(rng), normal(rng));
  }
  return HoloPoly(n, coeffs);
}

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "mono-I", "mono-II"};
  return ids;
}

CriterionResult run_criterion(const std::string& id, std::uint64_t seed) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw LabError(ErrorKind::invalid_argument, "unknown criterion '" + id + "'");
  const auto t0 = Clock::now();
  CriterionResult res;
  try {
    res = it->second.fn(seed);
  } catch (const LabError& e) {
    res.pass = false;
    res.summary = std::string("error: ") + e.what();
    res.details = {{"error", e.what()}};
  }
  res.id = id;
  res.name = it->second.name;
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"sharpness", "necessity", "ode-catalog", "monotonicity",
                                                 "homogeneity", "dimension", "geodesic", "all"};
  return names;
}

std::vector<std::string> suite_members(const std::string& suite) {
  static const std::map<std::string, std::vector<std::string>> members = {
      {"sharpness", {"1", "2"}},
      {"necessity", {"3", "4"}},
      {"ode-catalog", {"5", "6", "7"}},
      {"monotonicity", {"mono-I", "mono-II"}},
      {"homogeneity", {"9"}},
      {"dimension", {"8"}},
      {"geodesic", {"10"}},
  };
  if (suite == "all") return criterion_ids();
  const auto it = members.find(suite);
  if (it == members.end()) throw LabError(ErrorKind::invalid_argument, "unknown suite '" + suite + "'");
  return it->second;
}

}  // namespace hadamard
