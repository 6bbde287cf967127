#include "equiloc/zrational.hpp"

#include <algorithm>

namespace equiloc {

namespace detail {
std::vector<Integer> expand_denominator(const std::map<int, int>& den) {
  std::vector<Integer> p{1};
  for (const auto& [k, e] : den) {
    for (int r = 0; r < e; ++r) {
      std::vector<Integer> q(p.size() + k, 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i];
        q[i + k] -= p[i];
      }
      p.swap(q);
    }
  }
  return p;
}
}  // namespace detail

namespace {

// Power series of 1/D at z = 0 up to z^order; D(0) = 1.
std::vector<Rational> inverse_series(const std::vector<Integer>& d, int order) {
  std::vector<Rational> s(std::max(order + 1, 0));
  for (int n = 0; n <= order; ++n) {
    Rational acc = (n == 0) ? Rational(1) : Rational(0);
    for (int j = 1; j <= n && j < static_cast<int>(d.size()); ++j) acc -= Rational(d[j]) * s[n - j];
    s[n] = acc;
  }
  return s;
}

}  // namespace

RingZRational inv_one_minus(int k, const GradedElement& a) {
  if (k == 0) throw DomainError("inv_one_minus: weight 0");
  if (!detail::is_zero(a.scalar_part())) throw DomainError("inv_one_minus: root must be nilpotent");
  const RingPtr& ring = a.ring();
  if (k < 0) {
    // 1 - z^k e^a = -z^k e^a (1 - z^{-k} e^{-a})
    RingZRational r = inv_one_minus(-k, -a);
    RingZRational unit = z_monomial(-k, GradedElement(-exp_nilpotent(-a)));
    return unit * r;
  }
  GradedElement u = exp_nilpotent(a) - GradedElement(ring, Rational(1));
  std::vector<GradedElement> powers{GradedElement(ring, Rational(1))};
  while (true) {
    GradedElement next = powers.back() * u;
    if (next.is_zero()) break;
    powers.push_back(next);
  }
  int top = static_cast<int>(powers.size()) - 1;
  RingZRational out;
  out.denominator[k] = top + 1;
  // sum_j z^{kj} u^j (1 - z^k)^{top - j} over (1 - z^k)^{top + 1}
  for (int j = 0; j <= top; ++j) {
    std::map<int, GradedElement> term{{k * j, powers[j]}};
    auto expanded = detail::times_int_poly(term, detail::expand_denominator({{k, top - j}}));
    for (const auto& [e, c] : expanded) detail::accumulate(out.numerator, e, c);
  }
  return out;
}

ScalarZRational inv_one_minus(int k) {
  if (k == 0) throw DomainError("inv_one_minus: weight 0");
  ScalarZRational out;
  if (k > 0) {
    out.numerator[0] = 1;
    out.denominator[k] = 1;
  } else {
    out.numerator[-k] = -1;
    out.denominator[-k] = 1;
  }
  return out;
}

ScalarZRational integrate_over_F(const RingZRational& f) {
  ScalarZRational out;
  out.denominator = f.denominator;
  for (const auto& [e, c] : f.numerator) detail::accumulate(out.numerator, e, c.integrate());
  return out;
}

LaurentPolynomial to_laurent_polynomial(const ScalarZRational& f) {
  if (f.numerator.empty()) return {};
  auto d = detail::expand_denominator(f.denominator);
  const int emin = f.numerator.begin()->first;
  const int emax = f.numerator.rbegin()->first;
  const int degP = emax - emin;
  const int degD = static_cast<int>(d.size()) - 1;
  if (degP < degD) throw NotAPolynomial("fixed-point sum has a pole at a root of unity");
  std::vector<Rational> p(degP + 1);
  for (const auto& [e, c] : f.numerator) p[e - emin] = c;
  std::vector<Rational> q(degP - degD + 1);
  for (int n = 0; n <= degP; ++n) {
    Rational acc = p[n];
    for (int j = 1; j <= degD && j <= n; ++j)
      if (n - j < static_cast<int>(q.size()) && d[j] != 0) acc -= Rational(d[j]) * q[n - j];
    if (n < static_cast<int>(q.size())) {
      q[n] = acc;
    } else if (sgn(acc) != 0) {
      throw NotAPolynomial("fixed-point sum has a pole at a root of unity");
    }
  }
  LaurentPolynomial out;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (sgn(q[i]) != 0) out[static_cast<int>(i) + emin] = q[i];
  return out;
}

ScalarZRational from_laurent(const LaurentPolynomial& p) {
  ScalarZRational f;
  for (const auto& [e, c] : p) detail::accumulate(f.numerator, e, c);
  return f;
}

bool is_zero_function(const ScalarZRational& f) { return f.numerator.empty(); }

LaurentPolynomial series_at_zero(const ScalarZRational& f, int max_exponent) {
  LaurentPolynomial out;
  if (f.numerator.empty()) return out;
  const int emin = f.numerator.begin()->first;
  if (max_exponent < emin) return out;
  auto s = inverse_series(detail::expand_denominator(f.denominator), max_exponent - emin);
  for (int e = emin; e <= max_exponent; ++e) {
    Rational acc = 0;
    for (const auto& [ne, c] : f.numerator) {
      if (ne > e) break;
      acc += c * s[e - ne];
    }
    if (sgn(acc) != 0) out[e] = acc;
  }
  return out;
}

Rational residue_at_zero(const ScalarZRational& f) {
  if (f.numerator.empty() || f.numerator.begin()->first > -1) return 0;
  // Needed order: -1 - emin; bounded by |shift| + numerator span, as only negative exponents matter.
  auto series = series_at_zero(f, -1);
  auto it = series.find(-1);
  return it == series.end() ? Rational(0) : it->second;
}

ScalarZRational substitute_inverse(const ScalarZRational& f) {
  // 1 / (1 - z^{-k})^e = (-1)^e z^{ke} / (1 - z^k)^e
  int sign_exp = 0, zpow = 0;
  for (const auto& [k, e] : f.denominator) {
    sign_exp += e;
    zpow += k * e;
  }
  ScalarZRational out;
  out.denominator = f.denominator;
  for (const auto& [e, c] : f.numerator)
    detail::accumulate(out.numerator, -e + zpow, Rational(sign_exp % 2 ? Rational(-c) : c));
  return out;
}

Rational residue_at_infinity(const ScalarZRational& f) {
  return residue_at_zero(shift(substitute_inverse(f), -1));
}

ScalarZRational derivative(const ScalarZRational& f) {
  std::map<int, int> once;
  for (const auto& [k, e] : f.denominator) once[k] = 1;
  ScalarZRational out;
  out.denominator = f.denominator;
  for (const auto& [k, e] : once) out.denominator[k] += 1;

  std::map<int, Rational> dn;
  for (const auto& [e, c] : f.numerator)
    if (e != 0) detail::accumulate(dn, e - 1, Rational(c * e));
  out.numerator = detail::times_int_poly(dn, detail::expand_denominator(once));
  for (const auto& [k, e] : f.denominator) {
    std::map<int, int> others = once;
    others.erase(k);
    std::map<int, Rational> term;
    for (const auto& [ne, c] : f.numerator)
      detail::accumulate(term, ne + k - 1, Rational(c * (e * k)));
    for (const auto& [ne, c] : detail::times_int_poly(term, detail::expand_denominator(others)))
      detail::accumulate(out.numerator, ne, c);
  }
  return out;
}

Complex evaluate(const ScalarZRational& f, Complex z) {
  Complex num = 0;
  for (const auto& [e, c] : f.numerator) num += c.get_d() * std::pow(z, e);
  Complex den = 1;
  for (const auto& [k, e] : f.denominator) den *= std::pow(Complex(1) - std::pow(z, k), e);
  return num / den;
}

Complex evaluate(const LaurentPolynomial& p, Complex z) {
  Complex acc = 0;
  for (const auto& [e, c] : p) acc += c.get_d() * std::pow(z, e);
  return acc;
}

Rational evaluate_at_one(const LaurentPolynomial& p) {
  Rational s = 0;
  for (const auto& [e, c] : p) s += c;
  return s;
}

}  // namespace equiloc
