#include "hadamard/runner.hpp"

#include "hadamard/comparison_ode.hpp"
#include "hadamard/dimension.hpp"
#include "hadamard/error.hpp"
#include "hadamard/growth.hpp"
#include "hadamard/numerics/calculus.hpp"
#include "hadamard/radial_metric.hpp"
#include "hadamard/suites.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace hadamard {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "command", "model", "n",     "kappa",  "coeffs", "rho_max", "table",     "f",      "center",
      "radii",   "h",     "h_kappa", "A",    "eps",    "tol",     "d",         "direction", "K",
      "threshold", "expect_violation", "out", "prefix", "seed",  "bound",     "c",      "C",
      "r0",      "B",     "u",     "regime", "c1",     "suite"};
  return keys;
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw LabError(ErrorKind::parse_error, "config key '" + key + "': " + what);
}

double number(const Json& cfg, const std::string& key, std::optional<double> def = std::nullopt) {
  if (!cfg.contains(key)) {
    if (def) return *def;
    bad(key, "required");
  }
  const Json& v = cfg.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return kInfinity;
    std::size_t used = 0;
    try {
      const double x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  bad(key, "expected a number, got " + v.dump());
}

int integer(const Json& cfg, const std::string& key, std::optional<int> def = std::nullopt) {
  const double x = number(cfg, key, def ? std::optional<double>(*def) : std::nullopt);
  if (x != std::floor(x) || std::abs(x) > 1e9) bad(key, "expected an integer");
  return static_cast<int>(x);
}

std::string text(const Json& cfg, const std::string& key, std::optional<std::string> def = std::nullopt) {
  if (!cfg.contains(key)) {
    if (def) return *def;
    bad(key, "required");
  }
  const Json& v = cfg.at(key);
  if (!v.is_string()) bad(key, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

bool boolean(const Json& cfg, const std::string& key, bool def) {
  if (!cfg.contains(key)) return def;
  const Json& v = cfg.at(key);
  if (v.is_boolean()) return v.get<bool>();
  bad(key, "expected true or false");
}

std::uint64_t seed_of(const Json& cfg) {
  if (!cfg.contains("seed")) return kDefaultSeed;
  const Json& v = cfg.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  bad("seed", "expected a nonnegative integer");
}

std::vector<double> numbers(const Json& cfg, const std::string& key) {
  const Json& v = cfg.at(key);
  if (v.is_string()) return parse_radii(v.get<std::string>());
  if (!v.is_array()) bad(key, "expected a list of numbers or a start:stop:count string");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(key, "expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ModelSpec model_spec(const Json& cfg) {
  ModelSpec spec;
  spec.tag = text(cfg, "model", "flat");
  spec.n = integer(cfg, "n", 1);
  spec.kappa = number(cfg, "kappa", 1.0);
  if (cfg.contains("coeffs")) spec.coeffs = numbers(cfg, "coeffs");
  spec.rho_max = number(cfg, "rho_max", kInfinity);
  spec.table_path = text(cfg, "table", "");
  if (spec.tag == "custom" && spec.table_path.empty()) bad("table", "required for the custom model");
  if (spec.tag == "conformal_poly" && spec.coeffs.empty()) bad("coeffs", "required for conformal_poly");
  return spec;
}

std::vector<double> radii_of(const Json& cfg, const RadialKahlerModel& model, bool increasing = true) {
  if (!cfg.contains("radii")) bad("radii", "required");
  auto r = numbers(cfg, "radii");
  if (r.empty()) bad("radii", "empty");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(r[i] < model.r_max()))
      throw LabError(ErrorKind::domain, "radius " + format_number(r[i]) + " outside (0, " +
                                            format_number(model.r_max()) + ") for model " + model.name());
    if (increasing && i > 0 && !(r[i] > r[i - 1])) bad("radii", "must increase strictly");
  }
  return r;
}

Eigen::VectorXcd center_of(const Json& cfg) {
  if (!cfg.contains("center")) return {};
  const Complex c = parse_complex(text(cfg, "center"));
  if (c == Complex(0.0)) return {};
  Eigen::VectorXcd v(1);
  v[0] = c;
  return v;
}

CatalogParams catalog_params(const Json& cfg) {
  CatalogParams p;
  p.kappa = number(cfg, "h_kappa", number(cfg, "kappa", 1.0));
  p.A = number(cfg, "A", 0.0);
  p.eps = number(cfg, "eps", 0.0);
  return p;
}

CurvatureLowerBound model_bound(const RadialKahlerModel& model) {
  const auto& closed = model.closed_forms().curvature;
  if (!closed) return curvature_bound_of(model);
  return CurvatureLowerBound::custom("curvature(" + model.name() + ")", closed, model.r_max());
}

Convexifier convexifier_of(const Json& cfg, const RadialKahlerModel* model, double r_end = 60.0) {
  const std::string h = text(cfg, "h", "auto");
  if (h == "logr") return closed_form_convexifier("nonneg");
  if (h == "auto") {
    if (!model) bad("h", "auto needs a model");
    RiccatiOptions opt;
    opt.r_end = r_end;
    return solve_convexifier(solve_riccati_equality(model_bound(*model), opt));
  }
  for (const auto& tag : catalog_tags())
    if (tag == h) return closed_form_convexifier(tag, catalog_params(cfg));
  bad("h", "expected auto, logr or a catalog tag, got '" + h + "'");
}

Direction direction_of(const Json& cfg) {
  const std::string d = text(cfg, "direction", "nonincreasing");
  if (d == "nonincreasing") return Direction::nonincreasing;
  if (d == "nondecreasing") return Direction::nondecreasing;
  bad("direction", "expected nonincreasing or nondecreasing");
}

std::string num(double v) { return format_number(v); }

struct Outcome {
  bool violation = false;
  Json checks = Json::array();
  CsvTable csv;
  std::vector<std::pair<std::string, std::string>> extra;  // file suffix, content
  std::vector<std::string> lines;                          // stdout summary
};

Outcome cmd_curvature(const Json& cfg) {
  const auto model = builtin_model(model_spec(cfg));
  const auto radii = radii_of(cfg, model);
  const double tol = number(cfg, "tol", 1e-6);
  Outcome o;
  o.csv.header = {"r", "rho", "H", "hessian", "identity_residual"};
  double worst = 0.0, at = 0.0;
  for (double r : radii) {
    const double H = radial_curvature(model, r);
    const double u = model_hessian(model, r);
    double step = 1e-3 * std::min(1.0, r);
    if (std::isfinite(model.r_max())) step = std::min(step, 0.25 * (model.r_max() - r));
    const double du = numerics::richardson_first([&](double s) { return model_hessian(model, s); }, r, step).value;
    const double identity = du + 2.0 * u * u + 0.5 * H;
    const double scaled = std::abs(identity) / (1.0 + u * u + std::abs(H));
    if (scaled > worst) {
      worst = scaled;
      at = r;
    }
    o.csv.add({num(r), num(model.rho_of_r(r)), num(H), num(u), num(identity)});
  }
  const bool pass = worst <= tol;
  o.violation = !pass;
  o.checks.push_back({{"name", "riccati_identity"},
                      {"pass", pass},
                      {"max_scaled_residual", worst},
                      {"at", at},
                      {"tolerance", tol}});
  o.lines.push_back("curvature table for " + model.name() + ": " + std::to_string(radii.size()) +
                    " radii, max scaled identity residual " + num(worst));
  return o;
}

CurvatureLowerBound bound_of(const Json& cfg, const RadialKahlerModel* model) {
  const std::string b = text(cfg, "bound", "model");
  if (b == "model") {
    if (!model) bad("bound", "model bound needs a model");
    return model_bound(*model);
  }
  if (b == "constant") return CurvatureLowerBound::constant(number(cfg, "c"));
  if (b == "inverse_square") return CurvatureLowerBound::inverse_square(number(cfg, "C"), number(cfg, "r0", 1.0));
  for (const auto& tag : catalog_tags())
    if (tag == b) return closed_form_bound(tag, catalog_params(cfg));
  bad("bound", "expected model, constant, inverse_square or a catalog tag, got '" + b + "'");
}

Supersolution supersolution_of(const Json& cfg, const CurvatureLowerBound& g) {
  const std::string u = text(cfg, "u", "numeric");
  if (u == "numeric") return solve_riccati_equality(g);
  if (u == "inverse_square") return inverse_square_supersolution(number(cfg, "C"), number(cfg, "B", 1.0));
  for (const auto& tag : catalog_tags())
    if (tag == u) return closed_form_supersolution(tag, catalog_params(cfg));
  bad("u", "expected numeric, inverse_square or a catalog tag, got '" + u + "'");
}

Outcome cmd_ode(const Json& cfg) {
  std::optional<RadialKahlerModel> model;
  if (text(cfg, "bound", "model") == "model") model = builtin_model(model_spec(cfg));
  const auto g = bound_of(cfg, model ? &*model : nullptr);
  const auto u = supersolution_of(cfg, g);
  const double tol = number(cfg, "tol", 1e-8);
  const double lo = std::max(u.r_min, g.r_min);
  const double hi = std::min({u.r_max, g.r_max, u.blow_down.value_or(kInfinity)});
  std::vector<double> grid;
  if (cfg.contains("radii")) {
    grid = numbers(cfg, "radii");
  } else {
    const double a = lo > 0.0 ? lo * 1.01 : 1e-3;
    const double b = std::isfinite(hi) ? hi - 0.05 * (hi - a) : std::max(20.0, 20.0 * a);
    grid = log_grid(a, b, 200);
  }
  for (double r : grid)
    if (!(r > lo) || !(r < hi))
      throw LabError(ErrorKind::domain, "radius " + num(r) + " outside the supersolution's domain (" + num(lo) +
                                            ", " + num(hi) + ")");
  const auto rep = verify_supersolution(u, g, grid, tol);

  std::optional<Convexifier> h;
  if (lo == 0.0) h = solve_convexifier(u);
  Outcome o;
  o.csv.header = {"r", "u", "residual", "h", "h_prime"};
  std::ostringstream us, hs;
  for (double r : grid) {
    std::vector<std::string> row = {num(r), num(u.u(r)), num(u.residual(r, g)), "", ""};
    if (h && r < h->r_max) {
      row[3] = num(h->h(r));
      row[4] = num(h->h_prime(r));
    }
    o.csv.add(row);
  }
  write_samples(us, [&](double r) { return u.u(r); }, grid, "u");
  o.extra.emplace_back("_u.txt", us.str());
  if (h) {
    std::vector<double> hgrid;
    for (double r : grid)
      if (r < h->r_max) hgrid.push_back(r);
    write_samples(hs, h->h, hgrid, "h");
    o.extra.emplace_back("_h.txt", hs.str());
  }
  o.violation = !rep.pass;
  Json check = {{"name", "supersolution"},
                {"pass", rep.pass},
                {"bound", g.name},
                {"u", u.name},
                {"min_residual", rep.min_residual},
                {"argmin", rep.argmin},
                {"max_abs_residual", rep.max_abs_residual},
                {"tolerance", tol},
                {"samples", rep.samples}};
  if (u.blow_down) check["blow_down"] = *u.blow_down;
  o.checks.push_back(check);
  if (h) {
    o.checks.push_back({{"name", "convexifier"},
                        {"h", h->name},
                        {"normalization_offset", h->normalization_offset},
                        {"normalization_limit", h->normalization_limit},
                        {"r_max", json_number(h->r_max)}});
  }
  o.lines.push_back("supersolution " + u.name + " against " + g.name + ": min residual " + num(rep.min_residual) +
                    (rep.pass ? " (pass)" : " (violation)"));
  return o;
}

MaxModulusOptions modulus_options(const Json& cfg) {
  MaxModulusOptions opt;
  opt.seed = seed_of(cfg);
  return opt;
}

Outcome cmd_three_circle(const Json& cfg) {
  const auto model = builtin_model(model_spec(cfg));
  const auto f = parse_holo_poly(text(cfg, "f"), model.n());
  const auto radii = radii_of(cfg, model);
  if (radii.size() < 3) bad("radii", "three-circle needs at least 3 radii");
  const auto h = convexifier_of(cfg, &model);
  const double tol = number(cfg, "tol", 1e-6);
  const auto curve = growth_curve(model, f, center_of(cfg), radii, modulus_options(cfg));
  const auto rep = three_circle_check(curve, h, tol);
  Outcome o;
  std::ostringstream csv;
  write_curve_csv(csv, curve, &h, &rep);
  o.extra.emplace_back(".csv", csv.str());
  o.violation = !rep.pass;
  o.checks.push_back({{"name", "three_circle"},
                      {"pass", rep.pass},
                      {"h", h.name},
                      {"min_second_difference", rep.min_second_difference},
                      {"min_scaled_difference", rep.min_scaled_difference},
                      {"argmin_r", rep.argmin_r},
                      {"tolerance", tol},
                      {"triples", rep.second_differences.size()}});
  o.lines.push_back("three-circle on " + model.name() + " with h = " + h.name + ": min second difference " +
                    num(rep.min_second_difference) + " at r = " + num(rep.argmin_r));
  return o;
}

Outcome cmd_monotonicity(const Json& cfg) {
  const auto model = builtin_model(model_spec(cfg));
  const auto f = parse_holo_poly(text(cfg, "f"), model.n());
  const auto radii = radii_of(cfg, model);
  if (radii.size() < 2) bad("radii", "monotonicity needs at least 2 radii");
  const auto h = convexifier_of(cfg, &model);
  const Direction dir = direction_of(cfg);
  const double tol = number(cfg, "tol", 1e-7);
  const auto center = center_of(cfg);
  const auto opt = modulus_options(cfg);
  double d;
  std::string d_source = "config";
  if (cfg.contains("d")) {
    d = number(cfg, "d");
  } else if (dir == Direction::nondecreasing) {
    d = center.size() ? f.with_basepoint(center).vanishing_order() : f.vanishing_order();
    d_source = "vanishing_order";
  } else {
    try {
      d = order_at_infinity(growth_curve(model, f, center, log_grid(1e2, 1e4, 41), opt));
    } catch (const LabError& e) {
      throw LabError(ErrorKind::infinite_order,
                     std::string("cannot estimate the order at infinity (") + e.what() + "); pass d explicitly");
    }
    d_source = "order_at_infinity";
    if (!std::isfinite(d))
      throw LabError(ErrorKind::infinite_order, "order at infinity is infinite; pass d explicitly");
  }
  const auto curve = growth_curve(model, f, center, radii, opt);
  const auto rep = monotonicity_check(curve, h, d, dir, tol);
  Outcome o;
  o.csv.header = {"r", "h", "M", "logM", "ratio"};
  for (std::size_t i = 0; i < curve.size(); ++i)
    o.csv.add({num(radii[i]), num(h.h(radii[i])), num(curve.value(i)), num(curve.log_values[i]), num(rep.ratios[i])});
  o.violation = !rep.pass;
  o.checks.push_back({{"name", "monotonicity"},
                      {"pass", rep.pass},
                      {"direction", dir == Direction::nonincreasing ? "nonincreasing" : "nondecreasing"},
                      {"d", d},
                      {"d_source", d_source},
                      {"h", h.name},
                      {"worst_step", rep.worst_step},
                      {"argworst_r", rep.argworst_r},
                      {"tolerance", tol}});
  o.lines.push_back("log M - " + num(d) + " h on " + model.name() + ": worst adverse step " + num(rep.worst_step));
  return o;
}

Outcome cmd_necessity(const Json& cfg) {
  const auto model = builtin_model(model_spec(cfg));
  const auto grid = cfg.contains("radii") ? radii_of(cfg, model) : default_deficit_grid(model);
  const double tol = number(cfg, "tol", 0.05);
  const auto fit = necessity_deficit(model, grid);
  const bool flat = std::abs(fit.predicted) <= 1e-12;
  const double deviation = flat ? std::abs(fit.c2) : std::abs(fit.c2 - fit.predicted) / std::abs(fit.predicted);
  const bool pass = flat ? deviation <= 1e-9 : deviation <= tol;
  MultiIndex alpha(model.n(), 0);
  alpha[0] = 1;
  const auto curve = growth_curve(model, HoloPoly::monomial(alpha), {}, grid, modulus_options(cfg));
  Outcome o;
  o.csv.header = {"r", "M", "M_over_r"};
  for (std::size_t i = 0; i < curve.size(); ++i)
    o.csv.add({num(grid[i]), num(curve.value(i)), num(curve.value(i) / grid[i])});
  o.violation = !pass;
  o.checks.push_back({{"name", "deficit_law"},
                      {"pass", pass},
                      {"c2", fit.c2},
                      {"predicted", fit.predicted},
                      {"limit", fit.limit},
                      {"condition", fit.condition},
                      {"deviation", deviation},
                      {"deviation_kind", flat ? "absolute" : "relative"},
                      {"tolerance", flat ? 1e-9 : tol},
                      {"three_circle_violation_mechanism", fit.c2 < 0.0}});
  o.lines.push_back("deficit on " + model.name() + ": c2 = " + num(fit.c2) + ", H(0)/12 = " + num(fit.predicted));
  return o;
}

Outcome cmd_homogeneity(const Json& cfg) {
  const auto model = builtin_model(model_spec(cfg));
  const auto f = parse_holo_poly(text(cfg, "f"), model.n());
  const double K = number(cfg, "K", 2.0);
  const double threshold = number(cfg, "threshold", 0.05);
  std::vector<double> radii = cfg.contains("radii") ? radii_of(cfg, model) : std::vector<double>{1e2, 1e3, 1e4};
  HomogeneityOptions opt;
  opt.seed = seed_of(cfg);
  if (cfg.contains("d")) opt.d_override = number(cfg, "d");
  Outcome o;
  o.csv.header = {"r", "value", "d"};
  std::vector<double> values;
  for (double r : radii) {
    const auto rep = homogeneity_check(model, f, K, r, opt);
    values.push_back(rep.value);
    o.csv.add({num(r), num(rep.value), num(rep.d)});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) decreasing = decreasing && values[i] < values[i - 1];
  const bool small = values.front() <= threshold;
  o.violation = !(decreasing && small);
  o.checks.push_back({{"name", "homogeneity"},
                      {"pass", decreasing && small},
                      {"K", K},
                      {"values", values},
                      {"decreasing", decreasing},
                      {"first_value", values.front()},
                      {"threshold", threshold}});
  o.lines.push_back("homogeneity on " + model.name() + ": first value " + num(values.front()) +
                    (decreasing ? ", decreasing" : ", not decreasing"));
  return o;
}

Json dim_json(const DimValue& v) {
  if (v.infinite) return "inf";
  return v.count;
}

Outcome cmd_dimension(const Json& cfg) {
  const std::string regime = text(cfg, "regime", "poly");
  const int n = integer(cfg, "n", 1);
  Outcome o;
  o.csv.header = {"regime", "n", "d", "d_eff", "bound"};
  Json check = {{"name", "dimension"}, {"pass", true}, {"requested_regime", regime}};
  std::string reported;
  DimValue bound;
  double d = 0.0, d_eff = 0.0;
  if (regime == "poly") {
    d = number(cfg, "d");
    bound = dim_poly_space(n, d);
    d_eff = d;
    reported = "euclidean_exact";
  } else if (regime == "power-decay") {
    d = number(cfg, "d");
    const auto rep = power_decay_regimes(number(cfg, "A"), number(cfg, "eps"), d, n);
    bound = rep.bound;
    d_eff = rep.regime == "general" ? rep.d_eff : d;
    reported = rep.regime;
    check["A"] = rep.A;
    check["eps"] = rep.eps;
    check["trivial"] = rep.trivial;
    check["sharp"] = rep.sharp;
    check["d_e_2A_over_eps"] = rep.d_eff;
    check["witness_below_next_integer"] = rep.witness;
    check["general_bound"] = dim_json(rep.general_bound);
  } else if (regime == "h") {
    d = number(cfg, "d");
    std::optional<RadialKahlerModel> model;
    if (text(cfg, "h", "auto") == "auto") model = builtin_model(model_spec(cfg));
    const auto h = convexifier_of(cfg, model ? &*model : nullptr, 1e4);
    const auto rep = dim_bound_from_h(h, d, n);
    bound = rep.bound;
    d_eff = rep.d_eff;
    reported = rep.regime;
    check["h"] = h.name;
    check["gamma"] = json_number(rep.gamma);
    if (rep.regime == "exp_growth") {
      check["exp_A"] = rep.exp_A;
      check["c1"] = rep.c1;
    }
    check["derivation"] = rep.derivation;
  } else if (regime == "exp") {
    d = number(cfg, "d");
    const auto rep = exp_growth_bound(number(cfg, "C"), d, n, number(cfg, "c1"));
    bound = rep.bound.bound;
    d_eff = rep.bound.d_eff;
    reported = "exp_growth";
    check["C"] = rep.C;
    check["a"] = rep.roots.a;
    check["b"] = rep.roots.b;
    check["A"] = rep.roots.A;
    check["k"] = rep.roots.k;
    check["c1"] = rep.c1;
    check["derivation"] = rep.bound.derivation;
  } else {
    bad("regime", "expected poly, power-decay, h or exp");
  }
  check["regime"] = reported;
  check["n"] = n;
  check["d"] = d;
  check["d_eff"] = d_eff;
  check["bound"] = dim_json(bound);
  o.checks.push_back(check);
  o.csv.add({reported, std::to_string(n), num(d), num(d_eff), bound.str()});
  o.lines.push_back("dimension bound " + bound.str() + " (regime " + reported + ", d_eff = " + num(d_eff) + ")");
  return o;
}

Outcome cmd_suite(const Json& cfg) {
  const std::string name = text(cfg, "suite", "all");
  const auto members = suite_members(name);
  const std::uint64_t seed = seed_of(cfg);
  Outcome o;
  o.csv.header = {"id", "name", "pass", "summary"};
  for (const auto& id : members) {
    const auto res = run_criterion(id, seed);
    o.violation = o.violation || !res.pass;
    o.csv.add({res.id, res.name, res.pass ? "PASS" : "FAIL", res.summary});
    o.checks.push_back({{"name", res.name},
                        {"id", res.id},
                        {"pass", res.pass},
                        {"summary", res.summary},
                        {"seconds", res.seconds},
                        {"details", res.details}});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-8s %-4s %6.2fs  ", res.id.c_str(), res.pass ? "PASS" : "FAIL", res.seconds);
    o.lines.push_back(buf + res.name + ": " + res.summary);
  }
  return o;
}

Outcome dispatch(const std::string& command, const Json& cfg) {
  if (command == "curvature") return cmd_curvature(cfg);
  if (command == "ode") return cmd_ode(cfg);
  if (command == "three-circle") return cmd_three_circle(cfg);
  if (command == "monotonicity") return cmd_monotonicity(cfg);
  if (command == "necessity") return cmd_necessity(cfg);
  if (command == "homogeneity") return cmd_homogeneity(cfg);
  if (command == "dimension") return cmd_dimension(cfg);
  if (command == "suite") return cmd_suite(cfg);
  throw LabError(ErrorKind::invalid_argument, "unknown command '" + command + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"curvature",   "ode",         "three-circle", "monotonicity",
                                                 "necessity",   "homogeneity", "dimension",    "suite"};
  return names;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorKind::io_error, "cannot read config '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw LabError(ErrorKind::parse_error, "config '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw LabError(ErrorKind::parse_error, "config '" + path + "' must hold a JSON object");
  return cfg;
}

Json merge_config(const Json& file, const Json& flags, std::optional<std::string> env_seed) {
  Json out = file.is_null() ? Json::object() : file;
  if (!out.is_object()) throw LabError(ErrorKind::parse_error, "config must be a JSON object");
  if (env_seed && !env_seed->empty()) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if ((*env_seed)[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(*env_seed, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != env_seed->size()) throw LabError(ErrorKind::parse_error, "LAB_SEED must be a nonnegative integer");
    out["seed"] = static_cast<std::uint64_t>(v);
  }
  for (const auto& [key, value] : flags.items()) out[key] = value;
  return out;
}

RunResult execute(const std::string& command, const Json& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!config.is_object()) throw LabError(ErrorKind::parse_error, "config must be a JSON object");
  for (const auto& [key, value] : config.items())
    if (!known_keys().contains(key)) throw LabError(ErrorKind::parse_error, "unknown config key '" + key + "'");
  const std::uint64_t seed = seed_of(config);
  const bool expect_violation = boolean(config, "expect_violation", false);
  const std::string dir = text(config, "out", ".");
  const std::string prefix = text(config, "prefix", command);

  Outcome o = dispatch(command, config);

  RunResult res;
  if (!o.violation) {
    res.verdict = expect_violation ? "unexpected-pass" : "pass";
    res.exit_code = expect_violation ? kExitViolation : kExitPass;
  } else {
    res.verdict = expect_violation ? "violation-as-expected" : "violation";
    res.exit_code = expect_violation ? kExitPass : kExitViolation;
  }

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw LabError(ErrorKind::io_error, "cannot create output directory '" + dir + "': " + ec.message());
  const std::filesystem::path base = std::filesystem::path(dir) / prefix;
  bool csv_written = false;
  for (const auto& [suffix, content] : o.extra) {
    const std::string path = base.string() + suffix;
    write_file(path, content);
    res.outputs.push_back(path);
    csv_written = csv_written || suffix == ".csv";
  }
  if (!csv_written) {
    const std::string path = base.string() + ".csv";
    write_file(path, o.csv.str());
    res.outputs.push_back(path);
  }
  const std::string json_path = base.string() + ".json";
  res.outputs.push_back(json_path);

  Json& rep = res.report;
  rep["artifact_version"] = kArtifactVersion;
  rep["command"] = command;
  rep["config"] = config;
  rep["seed"] = seed;
  rep["expect_violation"] = expect_violation;
  rep["verdict"] = res.verdict;
  rep["exit_code"] = res.exit_code;
  rep["checks"] = o.checks;
  rep["outputs"] = res.outputs;
  rep["timings"] = {{"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  rep["summary"] = o.lines;
  write_file(json_path, rep.dump(2) + "\n");
  return res;
}

int run(const std::string& command, const Json& config, std::ostream& out, std::ostream& err) {
  try {
    const RunResult res = execute(command, config);
    for (const auto& line : res.report["summary"]) out << line.get<std::string>() << '\n';
    out << "verdict: " << res.verdict << " (exit " << res.exit_code << ")\n";
    for (const auto& path : res.outputs) out << "wrote " << path << '\n';
    return res.exit_code;
  } catch (const LabError& e) {
    err << "lab " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "lab " << command << ": unexpected error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hadamard
