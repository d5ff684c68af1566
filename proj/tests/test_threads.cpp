#include "hadamard/growth.hpp"
#include "hadamard/report.hpp"

#include <doctest.h>

#include <optional>
#include <thread>

using namespace hadamard;

TEST_CASE("concurrent growth curves are identical to the serial run") {
  const auto model = cigar_model(2);
  const auto f = parse_holo_poly("z1^2*z2 + (1-i)z2^3 + z1");
  const auto radii = log_grid(0.2, 3.0, 6);
  const auto serial = growth_curve(model, f, {}, radii);

  constexpr int kThreads = 4;
  std::vector<std::optional<GrowthCurve>> results(kThreads);
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t)
    pool.emplace_back([&, t] { results[t] = growth_curve(model, f, {}, radii); });
  for (auto& th : pool) th.join();

  for (const auto& r : results) CHECK(r->log_values == serial.log_values);
}

TEST_CASE("repeated runs with a fixed seed are bit-identical") {
  MaxModulusOptions opt;
  opt.seed = 99;
  const auto f = parse_holo_poly("z1*z2*z3 + z3^2");
  const auto a = growth_curve(flat_model(3), f, {}, {0.5, 1.0}, opt);
  const auto b = growth_curve(flat_model(3), f, {}, {0.5, 1.0}, opt);
  CHECK(a.log_values == b.log_values);
}
