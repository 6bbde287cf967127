#pragma once

// Rational functions  N(z) / prod_k (1 - z^k)^{e_k}  with k > 0.
// The numerator is a Laurent polynomial, so a z-monomial prefactor lives in its exponents.

#include <complex>
#include <map>

#include "equiloc/ring.hpp"

namespace equiloc {

using LaurentPolynomial = std::map<int, Rational>;

template <class C>
struct ZRational {
  std::map<int, C> numerator;
  std::map<int, int> denominator;  // k -> multiplicity of (1 - z^k)
};

using ScalarZRational = ZRational<Rational>;
using RingZRational = ZRational<GradedElement>;

namespace detail {
inline bool is_zero(const GradedElement& g) { return g.is_zero(); }

template <class C>
void accumulate(std::map<int, C>& poly, int e, const C& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = poly.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) poly.erase(it);
  }
}

// prod_k (1 - z^k)^{e_k} as dense integer coefficients, index = exponent.
std::vector<Integer> expand_denominator(const std::map<int, int>& den);

template <class C>
std::map<int, C> times_int_poly(const std::map<int, C>& p, const std::vector<Integer>& q) {
  std::map<int, C> out;
  for (const auto& [e, c] : p)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (q[j] != 0) accumulate(out, e + static_cast<int>(j), C(c * Rational(q[j])));
  return out;
}
}  // namespace detail

template <class C>
ZRational<C> z_monomial(int e, const C& c) {
  ZRational<C> f;
  detail::accumulate(f.numerator, e, c);
  return f;
}

template <class C>
ZRational<C> operator*(const ZRational<C>& a, const ZRational<C>& b) {
  ZRational<C> out;
  for (const auto& [ea, ca] : a.numerator)
    for (const auto& [eb, cb] : b.numerator) detail::accumulate(out.numerator, ea + eb, C(ca * cb));
  out.denominator = a.denominator;
  for (const auto& [k, e] : b.denominator) out.denominator[k] += e;
  return out;
}

template <class C>
ZRational<C> operator+(const ZRational<C>& a, const ZRational<C>& b) {
  std::map<int, int> den = a.denominator;
  for (const auto& [k, e] : b.denominator) den[k] = std::max(den[k], e);
  auto missing = [&](const std::map<int, int>& have) {
    std::map<int, int> m;
    for (const auto& [k, e] : den) {
      auto it = have.find(k);
      int d = e - (it == have.end() ? 0 : it->second);
      if (d > 0) m[k] = d;
    }
    return detail::expand_denominator(m);
  };
  ZRational<C> out;
  out.denominator = den;
  out.numerator = detail::times_int_poly(a.numerator, missing(a.denominator));
  for (const auto& [e, c] : detail::times_int_poly(b.numerator, missing(b.denominator)))
    detail::accumulate(out.numerator, e, c);
  return out;
}

template <class C>
ZRational<C> operator-(const ZRational<C>& a) {
  ZRational<C> out = a;
  for (auto& [e, c] : out.numerator) c = C(-c);
  return out;
}

template <class C>
ZRational<C> operator-(const ZRational<C>& a, const ZRational<C>& b) {
  return a + (-b);
}

template <class C>
ZRational<C> shift(const ZRational<C>& a, int s) {
  ZRational<C> out;
  out.denominator = a.denominator;
  for (const auto& [e, c] : a.numerator) out.numerator.emplace(e + s, c);
  return out;
}

// (1 - z^k e^a)^{-1} for nilpotent a.
RingZRational inv_one_minus(int k, const GradedElement& a);
ScalarZRational inv_one_minus(int k);

ScalarZRational integrate_over_F(const RingZRational& f);

// Exact division; throws NotAPolynomial when a pole survives.
LaurentPolynomial to_laurent_polynomial(const ScalarZRational& f);
ScalarZRational from_laurent(const LaurentPolynomial& p);
bool is_zero_function(const ScalarZRational& f);

// Coefficients of the Laurent expansion at z = 0 with exponent <= max_exponent.
LaurentPolynomial series_at_zero(const ScalarZRational& f, int max_exponent);
Rational residue_at_zero(const ScalarZRational& f);
// residue_at_zero( f(1/z) / z ).
Rational residue_at_infinity(const ScalarZRational& f);
ScalarZRational substitute_inverse(const ScalarZRational& f);  // f(1/z) in normal form
ScalarZRational derivative(const ScalarZRational& f);

Complex evaluate(const ScalarZRational& f, Complex z);
Complex evaluate(const LaurentPolynomial& p, Complex z);
Rational evaluate_at_one(const LaurentPolynomial& p);

}  // namespace equiloc
