#include "hadamard/error.hpp"
#include "hadamard/runner.hpp"
#include "hadamard/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>

using namespace hadamard;

namespace {

enum class Kind { text, number, integer, list, flag };

struct Flag {
  std::string key;
  Kind kind;
  std::string value;
  bool set = false;
  CLI::Option* opt = nullptr;
};

struct Command {
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<Flag> flags;
};

void bind(Command& c, const std::map<std::string, std::string>& names, const std::map<std::string, std::string>& helps) {
  for (auto& f : c.flags) {
    const std::string& name = names.at(f.key);
    if (f.kind == Kind::flag)
      f.opt = c.app->add_flag(name, f.set, helps.at(f.key));
    else
      f.opt = c.app->add_option(name, f.value, helps.at(f.key));
  }
}

Json flag_json(const Command& c) {
  Json out = Json::object();
  for (const auto& f : c.flags) {
    if (!f.opt || f.opt->count() == 0) continue;
    try {
      switch (f.kind) {
        case Kind::flag: out[f.key] = f.set; break;
        case Kind::text: out[f.key] = f.value; break;
        case Kind::number:
          if (f.value == "inf") {
            out[f.key] = "inf";
          } else {
            std::size_t used = 0;
            const double v = std::stod(f.value, &used);
            if (used != f.value.size()) throw std::invalid_argument(f.value);
            out[f.key] = v;
          }
          break;
        case Kind::integer: {
          std::size_t used = 0;
          const long long v = std::stoll(f.value, &used);
          if (used != f.value.size()) throw std::invalid_argument(f.value);
          out[f.key] = v;
          break;
        }
        case Kind::list: {
          Json arr = Json::array();
          std::string cur;
          auto push = [&] {
            std::size_t used = 0;
            const double v = std::stod(cur, &used);
            if (used != cur.size()) throw std::invalid_argument(cur);
            arr.push_back(v);
            cur.clear();
          };
          for (char ch : f.value) {
            if (ch == ',') push();
            else if (ch != ' ') cur.push_back(ch);
          }
          push();
          out[f.key] = arr;
          break;
        }
      }
    } catch (const std::exception&) {
      throw LabError(ErrorKind::parse_error, "invalid value '" + f.value + "' for " + f.opt->get_name());
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-circle lab: growth of holomorphic functions on radial Kahler model metrics"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  const std::map<std::string, std::string> names = {
      {"model", "--model"},     {"n", "--n"},         {"kappa", "--kappa"},       {"coeffs", "--coeffs"},
      {"rho_max", "--rho-max"}, {"table", "--table"}, {"f", "--f"},               {"center", "--center"},
      {"radii", "--radii"},     {"h", "--h"},         {"h_kappa", "--h-kappa"},   {"A", "--A"},
      {"eps", "--eps"},         {"tol", "--tol"},     {"d", "--d"},               {"direction", "--direction"},
      {"K", "--K"},             {"threshold", "--threshold"},                     {"expect_violation", "--expect-violation"},
      {"out", "--out"},         {"prefix", "--prefix"}, {"seed", "--seed"},       {"bound", "--bound"},
      {"c", "--c"},             {"C", "--C"},         {"r0", "--r0"},             {"B", "--B"},
      {"u", "--u"},             {"regime", "--regime"}, {"c1", "--c1"},           {"suite", "--suite"}};
  const std::map<std::string, std::string> helps = {
      {"model", "flat | cigar | hyperbolic | sphere | conformal_poly | custom"},
      {"n", "complex dimension"},
      {"kappa", "curvature scale of hyperbolic/sphere"},
      {"coeffs", "conformal_poly coefficients c0,c1,... of lambda = sum c_k rho^(2k)"},
      {"rho_max", "conformal_poly domain radius"},
      {"table", "custom profile table path (# rho lambda)"},
      {"f", "polynomial, e.g. \"z1^2*z2 - (1+2i)z3\""},
      {"center", "ball center (n = 1), e.g. \"0.3-0.2i\""},
      {"radii", "start:stop:count[:lin|:log] or a comma list"},
      {"h", "auto | logr | nonneg | lower_bound_minus_one | lower_bound_plus_one | cigar | power_decay"},
      {"h_kappa", "kappa of the constant-curvature catalog entries"},
      {"A", "power-decay amplitude"},
      {"eps", "power-decay exponent"},
      {"tol", "check tolerance"},
      {"d", "growth exponent"},
      {"direction", "nonincreasing | nondecreasing"},
      {"K", "homogeneity annulus ratio"},
      {"threshold", "homogeneity bound at the first radius"},
      {"expect_violation", "a violation is the expected outcome (inverts the verdict)"},
      {"out", "output directory"},
      {"prefix", "output file prefix (default: command name)"},
      {"seed", "random seed (overrides LAB_SEED and the config)"},
      {"bound", "model | constant | inverse_square | catalog tag"},
      {"c", "constant curvature bound"},
      {"C", "inverse-square constant, 0 < C < 1/4"},
      {"r0", "inverse-square bound start radius"},
      {"B", "inverse-square supersolution constant"},
      {"u", "numeric | inverse_square | catalog tag"},
      {"regime", "poly | power-decay | h | exp"},
      {"c1", "lower growth constant of h"},
      {"suite", "sharpness | necessity | ode-catalog | monotonicity | homogeneity | dimension | geodesic | all"}};

  const std::vector<std::string> model_keys = {"model", "n", "kappa", "coeffs", "rho_max", "table"};
  const std::map<std::string, Kind> kinds = {
      {"model", Kind::text},   {"n", Kind::integer},     {"kappa", Kind::number},   {"coeffs", Kind::list},
      {"rho_max", Kind::number}, {"table", Kind::text},  {"f", Kind::text},         {"center", Kind::text},
      {"radii", Kind::text},   {"h", Kind::text},        {"h_kappa", Kind::number}, {"A", Kind::number},
      {"eps", Kind::number},   {"tol", Kind::number},    {"d", Kind::number},       {"direction", Kind::text},
      {"K", Kind::number},     {"threshold", Kind::number}, {"expect_violation", Kind::flag},
      {"out", Kind::text},     {"prefix", Kind::text},   {"seed", Kind::integer},   {"bound", Kind::text},
      {"c", Kind::number},     {"C", Kind::number},      {"r0", Kind::number},      {"B", Kind::number},
      {"u", Kind::text},       {"regime", Kind::text},   {"c1", Kind::number},      {"suite", Kind::text}};

  const std::map<std::string, std::pair<std::string, std::vector<std::string>>> specs = {
      {"curvature", {"radial curvature, distance Hessian and the Riccati identity on a radius grid", {"radii", "tol"}}},
      {"ode",
       {"solve or verify a comparison supersolution and its convexifier",
        {"bound", "c", "C", "r0", "B", "u", "A", "eps", "h_kappa", "radii", "tol"}}},
      {"three-circle",
       {"log-convexity of the maximal modulus in h", {"f", "center", "radii", "h", "h_kappa", "A", "eps", "tol"}}},
      {"monotonicity",
       {"monotonicity of log M - d h",
        {"f", "center", "radii", "h", "h_kappa", "A", "eps", "tol", "d", "direction"}}},
      {"necessity", {"small-radius deficit of M(r)/r against H(0)/12", {"radii", "tol"}}},
      {"homogeneity", {"asymptotic homogeneity sweep", {"f", "K", "radii", "d", "threshold"}}},
      {"dimension",
       {"dimension bounds for polynomial-growth spaces",
        {"regime", "d", "A", "eps", "C", "c1", "h", "h_kappa"}}},
      {"suite", {"acceptance bundle with pinned seeds", {"suite"}}},
  };

  std::map<std::string, Command> commands;
  for (const auto& name : command_names()) {
    const auto& [description, keys] = specs.at(name);
    Command& c = commands[name];
    c.app = app.add_subcommand(name, description);
    c.app->set_help_flag("--help", "Print this help message and exit");
    c.app->add_option("--config", c.config_path, "JSON config file; flags win over its values");
    std::vector<std::string> all = keys;
    if (name != "suite") all.insert(all.end(), model_keys.begin(), model_keys.end());
    for (const auto& k : {"out", "prefix", "seed", "expect_violation"}) all.push_back(k);
    c.flags.reserve(all.size() + 1);
    for (const auto& k : all) c.flags.push_back({k, kinds.at(k)});
    bind(c, names, helps);
    if (name == "suite") {
      c.flags.push_back({"suite", Kind::text});
      Flag& positional = c.flags.back();
      positional.opt = c.app->add_option("name", positional.value, "suite name");
      positional.opt->excludes(c.flags.front().opt);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  for (auto& [name, c] : commands) {
    if (!c.app->parsed()) continue;
    try {
      const Json file = c.config_path.empty() ? Json::object() : load_config(c.config_path);
      const char* env = std::getenv("LAB_SEED");
      const Json cfg = merge_config(file, flag_json(c), env ? std::optional<std::string>(env) : std::nullopt);
      return run(name, cfg, std::cout, std::cerr);
    } catch (const LabError& e) {
      std::cerr << "lab " << name << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return kExitUsage;
}
