#include "hadamard/error.hpp"
#include "hadamard/holo_poly.hpp"

#include <doctest.h>

using namespace hadamard;

TEST_CASE("parser reads monomial sums") {
  const auto f = parse_holo_poly("2z1*z2^2 - (1+2i)z3 + 0.5i");
  CHECK(f.n() == 3);
  CHECK(f.degree() == 3);
  CHECK(f.coeffs().at({1, 2, 0}) == Complex(2.0, 0.0));
  CHECK(f.coeffs().at({0, 0, 1}) == Complex(-1.0, -2.0));
  CHECK(f.coeffs().at({0, 0, 0}) == Complex(0.0, 0.5));
  Eigen::VectorXcd z(3);
  z << Complex(1, 1), Complex(0.5, 0), Complex(0, -1);
  const Complex expected = 2.0 * z[0] * z[1] * z[1] - Complex(1, 2) * z[2] + Complex(0, 0.5);
  CHECK(std::abs(f(z) - expected) < 1e-14);
}

TEST_CASE("whitespace and z as z1") {
  const auto a = parse_holo_poly("z^2+z");
  const auto b = parse_holo_poly(" z1 ^ 2 + z1 ");
  CHECK(a.coeffs() == b.coeffs());
  CHECK(a(Complex(2.0, 0.0)) == Complex(6.0, 0.0));
}

TEST_CASE("equal exponents merge and zeros drop") {
  const auto f = parse_holo_poly("z^2 + 3z^2 - 4z^2 + z");
  CHECK(f.coeffs().size() == 1);
  CHECK(f.degree() == 1);
  CHECK_THROWS_AS(parse_holo_poly("z - z"), LabError);
}

TEST_CASE("explicit dimension pads variables") {
  const auto f = parse_holo_poly("z1", 3);
  CHECK(f.n() == 3);
  CHECK_THROWS_AS(parse_holo_poly("z4", 2), LabError);
}

TEST_CASE("malformed input is a parse error") {
  for (const std::string s : {"", "z^", "2**z", "z^-1", "(1+2i", "w", "z^2.5"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(parse_holo_poly(s), LabError);
  }
}

TEST_CASE("complex constants") {
  CHECK(parse_complex("0.3-0.2i") == Complex(0.3, -0.2));
  CHECK(parse_complex("i") == Complex(0.0, 1.0));
  CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
}

TEST_CASE("vanishing order and recentering") {
  CHECK(parse_holo_poly("z^3 + z^5").vanishing_order() == 3);
  CHECK(parse_holo_poly("z1*z2 + z2^4").vanishing_order() == 2);
  CHECK(parse_holo_poly("1 + z").vanishing_order() == 0);
  Eigen::VectorXcd p(1);
  p[0] = Complex(1.0, 0.0);
  // (z - 1)^2 vanishes to order 2 at z = 1
  const auto f = parse_holo_poly("z^2 - 2z + 1").with_basepoint(p);
  CHECK(f.vanishing_order() == 2);
  const auto g = parse_holo_poly("z^2 - 2z + 1").recentered(p);
  CHECK(g.coeffs().size() == 1);
  CHECK(g.coeffs().at({2}) == Complex(1.0, 0.0));
}

TEST_CASE("to_string parses back to the same polynomial") {
  const auto f = parse_holo_poly("(0.5-1.5i)z1^3*z2 + 2z2 - i");
  const auto g = parse_holo_poly(f.to_string(), f.n());
  CHECK(f.coeffs() == g.coeffs());
}

TEST_CASE("monomial factory") {
  const auto m = HoloPoly::monomial({2, 1}, Complex(0, 3));
  CHECK(m.is_monomial());
  CHECK(m.n() == 2);
  CHECK(m.degree() == 3);
}
