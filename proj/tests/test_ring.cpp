#include "doctest.h"
#include "helpers.hpp"

using namespace equiloc;
using namespace testutil;

TEST_CASE("ring add") {
  auto r = cp(2);
  auto h = h_of(r);
  auto one = scalar(r, 1);
  CHECK(GradedElement(r) + h == h);
  CHECK((one + h) + (one - h) == scalar(r, 2));
  CHECK(h + h == h * Rational(2));
  CHECK((h - h).is_zero());
}

TEST_CASE("ring mul and truncation") {
  auto r1 = cp(1), r2 = cp(2);
  auto h1 = h_of(r1), h2 = h_of(r2);
  CHECK(scalar(r1, 1) * h1 == h1);
  CHECK((h1 * h1).is_zero());
  auto p = (scalar(r2, 1) + h2) * (scalar(r2, 1) + h2);
  CHECK(p == scalar(r2, 1) + h2 * Rational(2) + h2 * h2);
  CHECK(p.coefficient({2}) == 1);
  CHECK_THROWS_AS(h1 * h2, RingMismatch);
  CHECK_THROWS_AS(h1 + h2, RingMismatch);
}

TEST_CASE("exp of nilpotents") {
  auto r1 = cp(1), r2 = cp(2);
  for (int m : {0, 1, 3, 7}) {
    auto e1 = exp_nilpotent(h_of(r1) * Rational(m));
    CHECK(e1 == scalar(r1, 1) + h_of(r1) * Rational(m));
    auto e2 = exp_nilpotent(h_of(r2) * Rational(m));
    CHECK(e2.coefficient({0}) == 1);
    CHECK(e2.coefficient({1}) == m);
    CHECK(2 * e2.coefficient({2}) == m * m);
  }
  CHECK(exp_nilpotent(GradedElement(r2)) == scalar(r2, 1));
  CHECK_THROWS_AS(exp_nilpotent(scalar(r2, 1)), DomainError);
}

TEST_CASE("integration") {
  CHECK(scalar(point_ring(), 1).integrate() == 1);
  auto r1 = cp(1);
  for (int m = 0; m < 6; ++m) {
    auto f = exp_nilpotent(h_of(r1) * Rational(m)) * (scalar(r1, 1) + h_of(r1));
    CHECK(f.integrate() == m + 1);
  }
  CHECK(h_of(cp(2)).integrate() == 0);
}

TEST_CASE("bernoulli numbers with B1 = +1/2") {
  const Rational want[] = {1, Rational(1, 2), Rational(1, 6), 0, Rational(-1, 30), 0, Rational(1, 42), 0,
                           Rational(-1, 30)};
  for (int n = 0; n < 9; ++n) CHECK(bernoulli_plus(n) == want[n]);
}

TEST_CASE("todd_from_roots") {
  auto r1 = cp(1), r2 = cp(2);
  CHECK(todd_from_roots(r2, {}) == scalar(r2, 1));
  CHECK(todd_from_roots(r1, {h_of(r1)}) == scalar(r1, 1) + h_of(r1) * Rational(1, 2));
  // (1 + h/2 + h^2/12)^3 truncated at h^2
  auto h = h_of(r2);
  auto t = scalar(r2, 1) + h * Rational(1, 2) + h * h * Rational(1, 12);
  auto want = t * t * t;
  CHECK(todd_from_roots(r2, {h, h, h}) == want);
  CHECK(want == scalar(r2, 1) + h * Rational(3, 2) + h * h);
  CHECK_THROWS_AS(todd_from_roots(r2, {scalar(r2, 1) + h}), DomainError);
}

TEST_CASE("tensor rings") {
  auto t = tensor(cp(1), cp(1));
  REQUIRE(t->generators.size() == 2);
  CHECK(t->generators[0].name == "h");
  CHECK(t->generators[1].name == "h_2");
  CHECK(t->truncation == 4);
  CHECK(t->integrals.at({1, 1}) == 1);
  auto a = embed(h_of(cp(1)), t, 0), b = embed(h_of(cp(1)), t, 1);
  CHECK((a * b).integrate() == 1);
  CHECK((a * a).is_zero() == false);  // truncation only bounds total degree
  CHECK((a * a).integrate() == 0);
}

TEST_CASE("ring spec checks") {
  CHECK_THROWS_AS(make_ring({{"a", 3}}, 2, {{{1}, Rational(1)}}), InputError);
  CHECK_THROWS_AS(make_ring({{"a", 2}}, 4, {{{1}, Rational(1)}}), InputError);
  CHECK_NOTHROW(make_ring({{"a", 2}}, 4, {{{2}, Rational(1)}}));
}
