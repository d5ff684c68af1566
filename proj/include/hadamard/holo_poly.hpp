#pragma once

// Holomorphic polynomials on C^n in monomial form.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace hadamard {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

class HoloPoly {
 public:
  /// Equal exponents are merged and zero coefficients dropped; the zero
  /// polynomial is rejected. `basepoint` defaults to the origin.
  HoloPoly(int n, const std::map<MultiIndex, Complex>& coeffs, Eigen::VectorXcd basepoint = {});

  static HoloPoly monomial(const MultiIndex& alpha, Complex c = 1.0);

  int n() const { return n_; }
  const std::map<MultiIndex, Complex>& coeffs() const { return coeffs_; }
  const Eigen::VectorXcd& basepoint() const { return basepoint_; }
  int degree() const { return degree_; }
  bool is_monomial() const { return coeffs_.size() == 1; }

  /// Minimal total degree of f(basepoint + w) in w.
  int vanishing_order() const;

  Complex operator()(const Eigen::VectorXcd& z) const;
  Complex operator()(Complex z) const;  // n = 1

  /// g(w) = f(p + w), with basepoint at the origin.
  HoloPoly recentered(const Eigen::VectorXcd& p) const;
  HoloPoly with_basepoint(Eigen::VectorXcd p) const;

  std::string to_string() const;

 private:
  int n_;
  std::map<MultiIndex, Complex> coeffs_;
  Eigen::VectorXcd basepoint_;
  int degree_ = 0;
};

/// Parses sums of monomials such as "z^3", "2z1*z2^2 - (1+2i)z3 + 0.5i".
/// Variables are z (same as z1) and z1..zN. `n` of 0 infers the dimension from
/// the largest variable index.
HoloPoly parse_holo_poly(const std::string& text, int n = 0);

/// A complex constant in the same syntax, e.g. "0.3-0.2i".
Complex parse_complex(const std::string& text);

}  // namespace hadamard
