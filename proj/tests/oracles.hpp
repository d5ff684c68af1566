#pragma once

// Closed forms computed independently of the library, straight from the
// defining formulas.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// Poincare disc with curvature -kappa: lambda = (2/s) / (1 - |z|^2).
inline double hyperbolic_distance(C p, C q, double kappa = 1.0) {
  const double t = std::abs(p - q) / std::abs(1.0 - std::conj(p) * q);
  return 2.0 / std::sqrt(kappa) * std::atanh(t);
}

// Stereographic sphere with curvature +kappa: lambda = (2/s) / (1 + |z|^2).
inline double sphere_distance(C p, C q, double kappa = 1.0) {
  const double t = std::abs(p - q) / std::abs(1.0 + std::conj(p) * q);
  return 2.0 / std::sqrt(kappa) * std::atan(t);
}

inline double flat_r(double rho) { return rho; }
inline double cigar_r(double rho) { return std::log(rho + std::sqrt(1.0 + rho * rho)); }
inline double hyperbolic_r(double rho) { return std::log((1.0 + rho) / (1.0 - rho)); }
inline double sphere_r(double rho) { return 2.0 * std::atan(rho); }

// Gaussian curvature of lambda^2 |dz|^2 from K = -lambda^-2 Laplacian(log lambda)
// by a central five-point stencil on the plane, independent of any jet code.
template <typename F>
double stencil_curvature(F lambda, double x, double y, double step = 1e-3) {
  auto L = [&](double a, double b) { return std::log(lambda(std::hypot(a, b))); };
  const double lap = (L(x + step, y) + L(x - step, y) + L(x, y + step) + L(x, y - step) - 4.0 * L(x, y)) /
                     (step * step);
  const double lam = lambda(std::hypot(x, y));
  return -lap / (lam * lam);
}

// Number of multi-indices of length n with total degree <= D, by recursion.
inline std::uint64_t count_monomials(int n, int D) {
  if (D < 0) return 0;
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (int k = 0; k <= D; ++k) total += count_monomials(n - 1, D - k);
  return total;
}

// Max modulus of a one-variable polynomial on the Euclidean circle |z - c| = R
// by dense sampling followed by golden-section polishing.
inline double circle_max(const std::vector<C>& coeffs, C c, double R, int samples = 4096) {
  auto f = [&](double t) {
    const C z = c + std::polar(R, t);
    C acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return std::abs(acc);
  };
  const double two_pi = 2.0 * std::numbers::pi;
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i < samples; ++i) {
    const double v = f(two_pi * i / samples);
    if (v > best_v) best_v = v, best = i;
  }
  double a = two_pi * (best - 1) / samples, b = two_pi * (best + 1) / samples;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    if (f(x1) > f(x2)) b = x2;
    else a = x1;
  }
  return std::max(best_v, f(0.5 * (a + b)));
}

}  // namespace oracle
