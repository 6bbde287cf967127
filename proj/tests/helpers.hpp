#pragma once

#include <random>

#include "equiloc/builtins.hpp"
#include "equiloc/ring.hpp"
#include "equiloc/zrational.hpp"

namespace testutil {

using namespace equiloc;

inline RingPtr cp(int n) { return projective_ring("h", n); }

inline GradedElement h_of(const RingPtr& r) { return GradedElement::generator(r, 0); }

inline GradedElement scalar(const RingPtr& r, const Rational& q) { return GradedElement(r, q); }

template <class C>
bool same_function(const ZRational<C>& a, const ZRational<C>& b) {
  return (a - b).numerator.empty();
}

inline ScalarZRational over(const LaurentPolynomial& num, std::map<int, int> den) {
  ScalarZRational f;
  for (const auto& [e, c] : num)
    if (sgn(c) != 0) f.numerator[e] = c;
  f.denominator = std::move(den);
  return f;
}

// Two generators a (degree 2), b (degree 4); truncation 6; integrals of a^3 and a*b.
inline RingPtr mixed_ring() {
  return make_ring({{"a", 2}, {"b", 4}}, 6, {{{3, 0}, Rational(1)}, {{1, 1}, Rational(2)}});
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline GradedElement random_element(const RingPtr& r, std::mt19937_64& rng, bool nilpotent = false) {
  GradedElement g(r);
  std::uniform_int_distribution<int> e(0, 3), coin(0, 2);
  for (int t = 0; t < 5; ++t) {
    Monomial m = r->unit();
    for (auto& x : m) x = e(rng);
    if (nilpotent && r->degree(m) == 0) continue;
    if (coin(rng) == 0) continue;
    g.add_term(m, random_rational(rng));
  }
  if (!nilpotent) g += GradedElement(r, random_rational(rng));
  return g;
}

inline ScalarZRational random_zrational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-3, 4), k(1, 3), mult(0, 2);
  ScalarZRational f;
  for (int t = 0; t < 4; ++t) {
    Rational c = random_rational(rng);
    if (sgn(c) != 0) f.numerator[e(rng)] += c;
  }
  for (auto it = f.numerator.begin(); it != f.numerator.end();)
    it = sgn(it->second) == 0 ? f.numerator.erase(it) : std::next(it);
  for (int kk = 1; kk <= 3; ++kk)
    if (int m = mult(rng)) f.denominator[kk] = m;
  return f;
}

}  // namespace testutil
