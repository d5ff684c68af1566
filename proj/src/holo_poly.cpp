#include "hadamard/holo_poly.hpp"

#include "hadamard/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace hadamard {

namespace {

int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

HoloPoly::HoloPoly(int n, const std::map<MultiIndex, Complex>& coeffs, Eigen::VectorXcd basepoint)
    : n_(n), basepoint_(std::move(basepoint)) {
  if (n < 1) throw LabError(ErrorKind::invalid_argument, "polynomial dimension must be >= 1");
  if (basepoint_.size() == 0) basepoint_ = Eigen::VectorXcd::Zero(n);
  if (basepoint_.size() != n)
    throw LabError(ErrorKind::invalid_argument, "basepoint dimension does not match the polynomial");
  for (const auto& [alpha, c] : coeffs) {
    if (static_cast<int>(alpha.size()) != n)
      throw LabError(ErrorKind::invalid_argument, "exponent length does not match the dimension");
    if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
      throw LabError(ErrorKind::invalid_argument, "negative exponent");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw LabError(ErrorKind::invalid_argument, "non-finite coefficient");
    if (c != Complex(0.0)) {
      coeffs_[alpha] += c;
      if (coeffs_[alpha] == Complex(0.0)) coeffs_.erase(alpha);
    }
  }
  if (coeffs_.empty()) throw LabError(ErrorKind::invalid_argument, "the zero polynomial has no growth curve");
  for (const auto& [alpha, c] : coeffs_) degree_ = std::max(degree_, total_degree(alpha));
}

HoloPoly HoloPoly::monomial(const MultiIndex& alpha, Complex c) {
  return HoloPoly(static_cast<int>(alpha.size()), {{alpha, c}});
}

int HoloPoly::vanishing_order() const {
  const HoloPoly g = basepoint_.isZero(0.0) ? *this : recentered(basepoint_);
  double scale = 0.0;
  for (const auto& [alpha, c] : g.coeffs_) scale = std::max(scale, std::abs(c));
  int order = g.degree_;
  for (const auto& [alpha, c] : g.coeffs_)
    if (std::abs(c) > 1e-12 * scale) order = std::min(order, total_degree(alpha));
  return order;
}

Complex HoloPoly::operator()(const Eigen::VectorXcd& z) const {
  if (z.size() != n_) throw LabError(ErrorKind::invalid_argument, "point dimension mismatch");
  Complex sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    Complex term = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < alpha[i]; ++k) term *= z[i];
    sum += term;
  }
  return sum;
}

Complex HoloPoly::operator()(Complex z) const {
  if (n_ != 1) throw LabError(ErrorKind::invalid_argument, "scalar evaluation needs n = 1");
  Complex sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    Complex term = c;
    for (int k = 0; k < alpha[0]; ++k) term *= z;
    sum += term;
  }
  return sum;
}

HoloPoly HoloPoly::recentered(const Eigen::VectorXcd& p) const {
  if (p.size() != n_) throw LabError(ErrorKind::invalid_argument, "recentering point dimension mismatch");
  std::map<MultiIndex, Complex> out;
  for (const auto& [alpha, c] : coeffs_) {
    // prod_i (p_i + w_i)^{a_i}, expanded one variable at a time.
    std::map<MultiIndex, Complex> partial{{MultiIndex(n_, 0), c}};
    for (int i = 0; i < n_; ++i) {
      std::map<MultiIndex, Complex> next;
      for (const auto& [beta, b] : partial) {
        for (int k = 0; k <= alpha[i]; ++k) {
          MultiIndex gamma = beta;
          gamma[i] = k;
          next[gamma] += b * binomial(alpha[i], k) * std::pow(p[i], alpha[i] - k);
        }
      }
      partial = std::move(next);
    }
    for (const auto& [beta, b] : partial) out[beta] += b;
  }
  double scale = 0.0;
  for (const auto& [beta, b] : out) scale = std::max(scale, std::abs(b));
  std::map<MultiIndex, Complex> cleaned;
  for (const auto& [beta, b] : out)
    if (std::abs(b) > 1e-14 * scale) cleaned[beta] = b;
  return HoloPoly(n_, cleaned);
}

HoloPoly HoloPoly::with_basepoint(Eigen::VectorXcd p) const { return HoloPoly(n_, coeffs_, std::move(p)); }

std::string HoloPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  char buf[80];
  for (const auto& [alpha, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
    os << buf;
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] == 0) continue;
      os << "*z" << (i + 1);
      if (alpha[i] > 1) os << "^" << alpha[i];
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  std::map<MultiIndex, Complex> parse(int& max_var) {
    std::vector<std::pair<std::map<int, int>, Complex>> terms;
    if (s_.empty()) fail("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = get() == '-' ? -1.0 : 1.0;
    while (true) {
      auto [powers, c] = term();
      terms.emplace_back(std::move(powers), sign * c);
      if (pos_ == s_.size()) break;
      const char op = get();
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      sign = op == '-' ? -1.0 : 1.0;
    }
    max_var = 1;
    for (const auto& [powers, c] : terms)
      for (const auto& [v, k] : powers) max_var = std::max(max_var, v);
    std::map<MultiIndex, Complex> out;
    for (const auto& [powers, c] : terms) {
      MultiIndex alpha(max_var, 0);
      for (const auto& [v, k] : powers) alpha[v - 1] += k;
      out[alpha] += c;
    }
    return out;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw LabError(ErrorKind::parse_error,
                   "cannot parse polynomial at position " + std::to_string(pos_) + ": " + what);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() {
    if (pos_ >= s_.size()) fail("unexpected end");
    return s_[pos_++];
  }
  bool number_start() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double real_number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  // number with optional trailing i, or a bare i.
  Complex scalar() {
    if (peek() == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    const double v = real_number();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  Complex parenthesized() {
    ++pos_;  // (
    Complex sum = 0.0;
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = get() == '-' ? -1.0 : 1.0;
    while (true) {
      sum += sign * scalar();
      const char c = get();
      if (c == ')') break;
      if (c != '+' && c != '-') fail("expected '+', '-' or ')' in coefficient");
      sign = c == '-' ? -1.0 : 1.0;
    }
    return sum;
  }

  int exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
    int k = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      k = 10 * k + (get() - '0');
      if (k > 1000) fail("exponent too large");
    }
    if (peek() == '.') fail("expected a nonnegative integer exponent");
    return k;
  }

  std::pair<std::map<int, int>, Complex> term() {
    Complex c = 1.0;
    std::map<int, int> powers;
    bool any = false;
    while (true) {
      const char ch = peek();
      if (ch == '(') {
        c *= parenthesized();
      } else if (number_start() || ch == 'i') {
        c *= scalar();
      } else if (ch == 'z') {
        ++pos_;
        int v = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          v = 0;
          while (std::isdigit(static_cast<unsigned char>(peek()))) v = 10 * v + (get() - '0');
          if (v < 1) fail("variable index must be >= 1");
        }
        powers[v] += exponent();
      } else {
        break;
      }
      any = true;
      if (peek() == '*') {
        ++pos_;
        if (pos_ == s_.size()) fail("dangling '*'");
      }
    }
    if (!any) fail("expected a term");
    return {powers, c};
  }
};

}  // namespace

HoloPoly parse_holo_poly(const std::string& text, int n) {
  Parser p(text);
  int max_var = 1;
  auto coeffs = p.parse(max_var);
  if (n == 0) n = max_var;
  if (n < max_var)
    throw LabError(ErrorKind::parse_error, "polynomial uses z" + std::to_string(max_var) +
                                               " but the dimension is " + std::to_string(n));
  std::map<MultiIndex, Complex> padded;
  for (auto& [alpha, c] : coeffs) {
    MultiIndex a = alpha;
    a.resize(n, 0);
    padded[a] += c;
  }
  return HoloPoly(n, padded);
}

Complex parse_complex(const std::string& text) {
  Parser p(text);
  int max_var = 1;
  Complex sum = 0.0;
  for (const auto& [alpha, c] : p.parse(max_var)) {
    if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a != 0; }))
      throw LabError(ErrorKind::parse_error, "expected a complex constant, got '" + text + "'");
    sum += c;
  }
  return sum;
}

}  // namespace hadamard
