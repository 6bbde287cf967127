#include <random>

#include "doctest.h"
#include "equiloc/quantize.hpp"
#include "helpers.hpp"

using namespace equiloc;
using namespace testutil;

namespace {

FixedComponent point_with(std::vector<int> weights) {
  FixedComponent F;
  F.name = "p";
  F.ring = point_ring();
  F.todd = scalar(F.ring, 1);
  F.omega = GradedElement(F.ring);
  for (int k : weights) F.blocks.push_back(NormalBlock{k, {GradedElement(F.ring)}});
  return F;
}

// Bernoulli numbers with B_1 = -1/2 from sum_{j<=n} C(n+1, j) B_j = 0.
std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational s = 0;
    for (int j = 0; j < k; ++j) s += Rational(binomial(k + 1, j)) * b[j];
    b[k] = -s / Rational(k + 1);
    b[k].canonicalize();
  }
  return b;
}

// prod_k td(k y) up to y^n, td(y) = sum (-1)^j B_j y^j / j!
std::vector<Rational> todd_product(const std::vector<int>& weights, int n) {
  auto b = bernoulli(n);
  std::vector<Rational> td(n + 1);
  for (int j = 0; j <= n; ++j) td[j] = (j % 2 ? -b[j] : b[j]) / factorial(j);
  std::vector<Rational> out(n + 1);
  out[0] = 1;
  for (int k : weights) {
    std::vector<Rational> next(n + 1);
    for (int i = 0; i <= n; ++i) {
      Rational kp = 1;
      for (int j = 0; i + j <= n; ++j, kp *= k) next[i + j] += out[i] * td[j] * kp;
    }
    out = next;
  }
  for (auto& c : out) c.canonicalize();
  return out;
}

using Bivariate = std::map<std::pair<int, int>, Rational>;  // (deg u, deg v) -> coefficient

// Coefficient of u^a v^b in (N(u,v)) / (u - v) with N = (rho(u) + rho(v))/2 - rho((u+v)/2), divided
// monomial by monomial through full bivariate long division.
Rational exceptional_oracle(const std::vector<int>& weights) {
  int lp = 0, lm = 0;
  Rational signed_product = 1;
  for (int k : weights) {
    (k > 0 ? lp : lm) += 1;
    signed_product *= k;
  }
  const int top = lp + lm + 2;
  auto rho = todd_product(weights, top);
  Bivariate N;
  for (int d = 0; d <= top; ++d) {
    N[{d, 0}] += rho[d] / 2;
    N[{0, d}] += rho[d] / 2;
    Rational half = 1;
    for (int t = 0; t < d; ++t) half /= 2;
    for (int i = 0; i <= d; ++i) N[{i, d - i}] -= rho[d] * Rational(binomial(d, i)) * half;
  }
  // divide by (u - v): repeatedly cancel the term with the largest u-degree
  Bivariate Q;
  while (true) {
    for (auto it = N.begin(); it != N.end();) it = sgn(it->second) == 0 ? N.erase(it) : std::next(it);
    if (N.empty()) break;
    auto lead = std::prev(N.end());  // largest u-degree
    auto [i, j] = lead->first;
    REQUIRE(i >= 1);
    Rational c = lead->second;
    Q[{i - 1, j}] += c;
    N[{i, j}] -= c;
    N[{i - 1, j + 1}] += c;
  }
  Rational out = Q[{lp - 1, lm - 1}] / signed_product;
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("rr_invariant examples") {
  auto cp1 = cp1_rotation(1);
  auto cp001 = cpn_linear({0, 0, 1}, 1);
  auto prod = product(cp1_rotation(1), cp1_rotation(-1));
  for (long m = 0; m <= 8; ++m) {
    CHECK(rr_invariant(cp1, m) == 1);
    CHECK(rr_invariant(cp001, m) == m + 1);
    CHECK(rr_invariant(prod, m) == m + 1);
  }
}

TEST_CASE("classification") {
  CHECK(classify(point_with({1, 2})) == Classification::PositiveDefinite);
  CHECK(classify(point_with({-3})) == Classification::NegativeDefinite);
  CHECK(classify(point_with({1, -1})) == Classification::Indefinite);
  CHECK(to_string(Classification::Indefinite) == "indefinite");
  CHECK(prescription(Classification::PositiveDefinite) == "residue_at_zero");
  CHECK(prescription(Classification::NegativeDefinite) == "residue_at_infinity");
  CHECK(prescription(Classification::Indefinite) == "average");
}

TEST_CASE("residue terms") {
  auto cp1 = cp1_rotation(1);
  for (long m = 0; m <= 8; ++m) CHECK(residue_term(cp1, 0, m) == 1);
  CHECK_THROWS_AS(residue_term(cp1, 1, 1), DomainError);
  // a maximum at J = 0: CP^1 with weight -1 at the level-0 point
  auto down = cp1_rotation(-1);
  REQUIRE(zero_level(down).size() == 1);
  const auto top = zero_level(down)[0];
  CHECK(classify(down.components[top]) == Classification::NegativeDefinite);
  for (long m = 0; m <= 8; ++m) CHECK(residue_term(down, top, m) == rr_invariant(down, m));
  auto prod = product(cp1_rotation(1), cp1_rotation(-1));
  auto zs = zero_level(prod);
  REQUIRE(zs.size() == 2);
  for (long m = 0; m <= 4; ++m) {
    Rational s = residue_term(prod, zs[0], m) + residue_term(prod, zs[1], m);
    CHECK(s == 0);
  }
}

TEST_CASE("exceptional term vanishes in low dimension and for constant rho") {
  CHECK(exceptional_term(point_with({1, -1})) == 0);
  CHECK(exceptional_term(point_with({3, -2})) == 0);
  CHECK(exceptional_term(point_with({1, 1, -1}), {Rational(5)}) == 0);
  CHECK(exceptional_term(point_with({2, 1, -1, -3}), {Rational(1), Rational(0), Rational(0), Rational(0)}) == 0);
}

TEST_CASE("exceptional term hand value") {
  // rho = td(y) td(2y) td(-y) has y^2 coefficient 1/4; N/(u-v) has u-coefficient r_2/4, over 1*2*(-1)
  CHECK(todd_product({1, 2, -1}, 2)[2] == Rational(1, 4));
  CHECK(exceptional_term(point_with({1, 2, -1})) == Rational(-1, 32));
  CHECK(exceptional_oracle({1, 2, -1}) == Rational(-1, 32));
}

TEST_CASE("exceptional term matches the bivariate oracle") {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<int> len(1, 3), mag(1, 4);
  for (int t = 0; t < 60; ++t) {
    std::vector<int> w;
    int lp = len(rng), lm = len(rng);
    for (int i = 0; i < lp; ++i) w.push_back(mag(rng));
    for (int i = 0; i < lm; ++i) w.push_back(-mag(rng));
    INFO("trial ", t);
    CHECK(exceptional_term(point_with(w)) == exceptional_oracle(w));
  }
}

TEST_CASE("exceptional term swap symmetry") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 3), mag(1, 4);
  for (int t = 0; t < 40; ++t) {
    std::vector<int> w, flipped;
    int lp = len(rng), lm = len(rng);
    for (int i = 0; i < lp; ++i) w.push_back(mag(rng));
    for (int i = 0; i < lm; ++i) w.push_back(-mag(rng));
    for (int k : w) flipped.push_back(-k);
    CHECK(exceptional_term(point_with(w)) == exceptional_term(point_with(flipped)));
  }
}

TEST_CASE("exceptional term errors") {
  CHECK_THROWS_AS(exceptional_term(point_with({1, 2})), NotIndefinite);
  CHECK_THROWS_AS(exceptional_term(point_with({-1})), NotIndefinite);
  auto p = cpn_linear({0, 1, 1, 2}, 1);
  const FixedComponent* line = nullptr;
  for (const auto& F : p.components)
    if (F.dim == 2) line = &F;
  REQUIRE(line != nullptr);
  CHECK(classify(*line) == Classification::Indefinite);
  CHECK_THROWS_AS(exceptional_term(*line), Unsupported);
}

TEST_CASE("regular term and main formula") {
  auto reg = find_builtin("reg011").build();
  CHECK(zero_level(reg).empty());
  auto dgmw = find_builtin("dgmw").build();
  auto prod = find_builtin("prod11").build();
  for (long m = 0; m <= 8; ++m) {
    auto rt = regular_term(reg, m);
    CHECK(rt.tag == RegularTag::Supplied);
    CHECK(rt.source == "quotient");
    CHECK(rt.value == Rational(rr_invariant(reg, m)));
    auto r = main_formula_report(reg, m);
    REQUIRE(r.balance.has_value());
    CHECK(*r.balance);

    auto d = main_formula_report(dgmw, m);
    CHECK(d.regular.value == 0);
    REQUIRE(d.balance.has_value());
    CHECK(*d.balance);
    CHECK(d.residue_sum() == Rational(d.rr_invariant));

    auto q = main_formula_report(prod, m);
    CHECK(!q.balance.has_value());
    CHECK(q.regular.tag == RegularTag::Diagnostic);
    CHECK(q.regular.value == m + 1);
    CHECK(q.exceptional_sum() == 0);
  }
  CHECK(to_string(RegularTag::Diagnostic) == "diagnostic");
}

TEST_CASE("DGMW identity with definite components at level 0") {
  for (const char* name : {"dgmw", "dgmw_mixed", "dgmw_max", "cp1", "cp001"}) {
    auto p = find_builtin(name).build();
    for (long m = 0; m <= 8; ++m) {
      Rational s = 0;
      for (auto i : zero_level(p)) s += residue_term(p, i, m);
      INFO(name, " m=", m);
      CHECK(s == Rational(rr_invariant(p, m)));
    }
  }
}

TEST_CASE("polynomiality") {
  auto cp1 = polynomiality_check(cp1_rotation(1), 1, 6);
  CHECK(cp1.exact());
  CHECK(cp1.coefficients == std::vector<Rational>{Rational(1)});
  auto prod = polynomiality_check(find_builtin("prod11").build(), 1, 6);
  CHECK(prod.exact());
  REQUIRE(prod.coefficients.size() == 2);
  CHECK(prod.coefficients[0] == 1);
  CHECK(prod.coefficients[1] == 1);
  auto cp012 = polynomiality_check(cpn_linear({0, 1, 2}, 1), 1, 10);
  CHECK(cp012.exact());
  CHECK_THROWS_AS(polynomiality_check(cp1_rotation(1), 1, 2), DomainError);

  std::vector<Rational> sq;
  for (long m = 2; m <= 7; ++m) sq.push_back(Rational(m * m));
  auto fit = fit_polynomial(sq, 2, 2);
  CHECK(fit.exact());
  CHECK(evaluate_polynomial(fit.coefficients, 11) == 121);
  sq.back() += 1;
  CHECK(!fit_polynomial(sq, 2, 2).exact());
}

TEST_CASE("bundle-power coherence") {
  for (const char* name : {"cp012", "prod11", "dgmw"}) {
    auto p = find_builtin(name).build();
    for (int k : {2, 3}) {
      auto q = bundle_power(p, k);
      for (long m = 0; m <= 3; ++m) {
        INFO(name, " k=", k, " m=", m);
        CHECK(rr_invariant(q, m) == rr_invariant(p, k * m));
        CHECK(character(q, m) == character(p, k * m));
      }
    }
  }
}
