#pragma once

// Acceptance bundles with pinned seeds and tolerances.

#include "hadamard/holo_poly.hpp"
#include "hadamard/report.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hadamard {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string summary;
  Json details = Json::object();
  double seconds = 0.0;
};

/// Random polynomial in n variables, total degree between 1 and max_degree,
/// one to four terms with complex Gaussian coefficients.
HoloPoly random_polynomial(std::mt19937_64& rng, int n, int max_degree);

/// Ids "1".."10" are the numbered acceptance criteria; "mono-I" and
/// "mono-II" are the two sharp monotonicity properties. Unknown ids throw.
CriterionResult run_criterion(const std::string& id, std::uint64_t seed = kDefaultSeed);

const std::vector<std::string>& criterion_ids();

/// sharpness | necessity | ode-catalog | monotonicity | homogeneity |
/// dimension | geodesic | all
std::vector<std::string> suite_members(const std::string& suite);
const std::vector<std::string>& suite_names();

}  // namespace hadamard
