#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace hadamard::numerics {

struct DerivativeEstimate {
  double value;
  double error;  // difference between the two finest extrapolants
};

/// First derivative by central differences with one Richardson extrapolation
/// (fourth-order accurate in h).
template <typename F>
DerivativeEstimate richardson_first(F&& f, double x, double h) {
  auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2 * s); };
  const double d1 = central(h), d2 = central(h / 2), d3 = central(h / 4);
  const double r1 = (4 * d2 - d1) / 3;
  const double r2 = (4 * d3 - d2) / 3;
  return {r2, std::abs(r2 - r1)};
}

/// Second derivative by the symmetric three-point stencil with one Richardson
/// extrapolation.
template <typename F>
DerivativeEstimate richardson_second(F&& f, double x, double h) {
  const double f0 = f(x);
  auto stencil = [&](double s) { return (f(x + s) - 2 * f0 + f(x - s)) / (s * s); };
  const double s1 = stencil(h), s2 = stencil(h / 2), s3 = stencil(h / 4);
  const double r1 = (4 * s2 - s1) / 3;
  const double r2 = (4 * s3 - s2) / 3;
  return {r2, std::abs(r2 - r1)};
}

/// Adaptive 15-point Gauss-Kronrod quadrature on [a, b].
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-13, double* error = nullptr) {
  if (a == b) return 0.0;
  double err = 0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol, &err);
  if (error) *error = err;
  return v;
}

/// Fixed 20-point Gauss-Legendre rule on [a, b], for short smooth pieces.
template <typename F>
double gauss_legendre(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

}  // namespace hadamard::numerics
