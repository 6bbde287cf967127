#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace equiloc;
using namespace testutil;

TEST_CASE("inv_one_minus scalar cases") {
  CHECK(same_function(inv_one_minus(1), over({{0, 1}}, {{1, 1}})));
  CHECK(same_function(inv_one_minus(-1), over({{1, -1}}, {{1, 1}})));
  auto r = point_ring();
  CHECK(same_function(integrate_over_F(inv_one_minus(1, GradedElement(r))), inv_one_minus(1)));
  CHECK_THROWS_AS(inv_one_minus(0), DomainError);
  CHECK_THROWS_AS(inv_one_minus(2, scalar(cp(1), 1)), DomainError);
}

TEST_CASE("inv_one_minus with a nilpotent root on CP^1") {
  auto r = cp(1);
  auto h = h_of(r);
  auto f = inv_one_minus(1, h);
  // 1/(1-z) + z h/(1-z)^2
  RingZRational want = z_monomial(0, scalar(r, 1));
  want.denominator[1] = 1;
  RingZRational second = z_monomial(1, h);
  second.denominator[1] = 2;
  CHECK(same_function(f, want + second));
  // multiply back by 1 - z e^h
  RingZRational back;
  back.numerator.emplace(0, scalar(r, 1));
  back.numerator.emplace(1, -exp_nilpotent(h));
  CHECK(same_function(f * back, z_monomial(0, scalar(r, 1))));
}

TEST_CASE("zrational arithmetic") {
  auto one_minus_z = over({{0, 1}, {1, -1}}, {});
  CHECK(to_laurent_polynomial(inv_one_minus(1) * one_minus_z) == LaurentPolynomial{{0, 1}});
  auto sum = inv_one_minus(1) + over({{1, 1}}, {{1, 1}});
  CHECK(same_function(sum, over({{0, 1}, {1, 1}}, {{1, 1}})));
}

TEST_CASE("integrate_over_F") {
  auto r = cp(1);
  auto h = h_of(r);
  for (int m = 0; m < 5; ++m) {
    auto mass = exp_nilpotent(h * Rational(m)) * (scalar(r, 1) + h);
    RingZRational f = z_monomial(0, mass);
    f.denominator[1] = 1;
    CHECK(same_function(integrate_over_F(f), over({{0, m + 1}}, {{1, 1}})));
    // sum_n z^n e^{n h} e^{m h}(1 + h) integrates to m + n + 1
    auto g = integrate_over_F(inv_one_minus(1, h) * z_monomial(0, mass));
    auto s = series_at_zero(g, 5);
    for (int n = 0; n <= 5; ++n) CHECK(s[n] == m + n + 1);
  }
}

TEST_CASE("to_laurent_polynomial") {
  CHECK(to_laurent_polynomial(over({{0, 1}, {2, -1}}, {{1, 1}})) == LaurentPolynomial{{0, 1}, {1, 1}});
  CHECK_THROWS_AS(to_laurent_polynomial(inv_one_minus(1)), NotAPolynomial);
  CHECK(to_laurent_polynomial(ScalarZRational{}).empty());
}

TEST_CASE("residue at zero") {
  CHECK(residue_at_zero(over({{-1, 1}}, {{1, 1}})) == 1);
  CHECK(residue_at_zero(inv_one_minus(1)) == 0);
  CHECK(residue_at_zero(over({{-1, 1}}, {{1, 1}, {2, 1}})) == 1);
  CHECK(residue_at_zero(over({{-3, 1}}, {{1, 1}, {2, 1}})) == 2);  // 1 + z + 2 z^2 + ...
}

TEST_CASE("residue at infinity is Res_0 of chi(1/z)/z") {
  // 1/(z(1 - 1/z)) = 1/(z - 1) = -(1 + z + ...): no z^{-1} term
  CHECK(residue_at_infinity(inv_one_minus(1)) == 0);
  // chi = 1/(1 - z^{-1}) = -z/(1 - z): chi(1/z)/z = z^{-1}/(1 - z)
  CHECK(residue_at_infinity(inv_one_minus(-1)) == 1);
  CHECK(residue_at_infinity(over({{0, 7}}, {})) == 7);
  CHECK(residue_at_infinity(over({{0, Rational(-2, 3)}}, {})) == Rational(-2, 3));
}

TEST_CASE("derivative and evaluation") {
  auto f = over({{-1, 2}, {3, 1}}, {{1, 1}, {2, 1}});
  auto df = derivative(f);
  const Complex z(0.3, 0.2), h(1e-6, 0.0);
  Complex fd = (evaluate(f, z + h) - evaluate(f, z - h)) / (2.0 * h);
  CHECK(std::abs(fd - evaluate(df, z)) < 1e-6 * std::abs(fd));
  CHECK(std::abs(evaluate(inv_one_minus(1), Complex(0.5, 0)) - 2.0) < 1e-15);
  CHECK(evaluate_at_one(LaurentPolynomial{{-1, 1}, {0, 2}, {1, 1}}) == 4);
}
