#include "equiloc/quantize.hpp"

#include <algorithm>

namespace equiloc {

Classification classify(const FixedComponent& F) {
  bool pos = false, neg = false;
  for (const auto& b : F.blocks) (b.weight > 0 ? pos : neg) = true;
  if (pos && !neg) return Classification::PositiveDefinite;
  if (neg && !pos) return Classification::NegativeDefinite;
  return Classification::Indefinite;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::PositiveDefinite: return "positive_definite";
    case Classification::NegativeDefinite: return "negative_definite";
    default: return "indefinite";
  }
}

std::string prescription(Classification c) {
  switch (c) {
    case Classification::PositiveDefinite: return "residue_at_zero";
    case Classification::NegativeDefinite: return "residue_at_infinity";
    default: return "average";
  }
}

std::string to_string(RegularTag t) { return t == RegularTag::Supplied ? "supplied" : "diagnostic"; }

Integer rr_invariant(const ManifoldPresentation& p, long m) {
  auto chi = character(p, m);
  auto it = chi.find(0);
  if (it == chi.end()) return 0;
  if (!is_integer(it->second)) throw NotAPolynomial("z^0 coefficient is not an integer");
  return it->second.get_num();
}

std::vector<std::size_t> zero_level(const ManifoldPresentation& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.components.size(); ++i)
    if (p.moment(i) == 0) out.push_back(i);
  return out;
}

Rational residue_term(const ManifoldPresentation& p, std::size_t index, long m) {
  if (p.moment(index) != 0) throw DomainError("residue_term needs a component with J(F) = 0");
  const FixedComponent& F = p.components.at(index);
  ScalarZRational chi = chi_tilde(F, m);
  switch (classify(F)) {
    case Classification::PositiveDefinite: return residue_at_zero(shift(chi, -1));
    case Classification::NegativeDefinite: return residue_at_infinity(chi);
    default: {
      Rational avg = (residue_at_zero(shift(chi, -1)) + residue_at_infinity(chi)) / 2;
      avg.canonicalize();
      return avg;
    }
  }
}

Rational exceptional_term(const FixedComponent& F, const std::vector<Rational>& rho) {
  if (classify(F) != Classification::Indefinite)
    throw NotIndefinite("exceptional term needs an indefinite component");
  if (F.dim > 0) throw Unsupported("exceptional term is implemented for isolated components only");
  int lp = 0, lm = 0;
  Rational norm = 1;
  for (int k : F.weights()) {
    (k > 0 ? lp : lm) += 1;
    norm /= k;
  }
  if (lp == 1 && lm == 1) return 0;
  const int n = lp + lm - 1;
  const Rational rn = n < static_cast<int>(rho.size()) ? rho[n] : Rational(0);
  if (sgn(rn) == 0) return 0;
  // Degree-n part of (rho(U) + rho(V))/2 - rho((U+V)/2), coefficient of U^i V^{n-i}.
  std::vector<Rational> c(n + 1);
  Rational two_n = 1;
  for (int i = 0; i < n; ++i) two_n *= 2;
  for (int i = 0; i <= n; ++i) {
    c[i] = -Rational(binomial(n, i)) / two_n;
    if (i == 0 || i == n) c[i] += Rational(1, 2);
  }
  // Exact division by (U - V): q_i = q_{i-1} - c_i.
  std::vector<Rational> q(n);
  Rational prev = 0;
  for (int i = 0; i < n; ++i) q[i] = prev = prev - c[i];
  if (prev != c[n]) throw DomainError("exceptional numerator not divisible by U - V");
  Rational out = rn * q[lp - 1] * norm;
  out.canonicalize();
  return out;
}

Rational exceptional_term(const FixedComponent& F) {
  if (classify(F) != Classification::Indefinite)
    throw NotIndefinite("exceptional term needs an indefinite component");
  if (F.dim > 0) throw Unsupported("exceptional term is implemented for isolated components only");
  const int n = F.codim_half();
  auto series = equivariant_todd_at_F(F, 2 * n).series(n);
  std::vector<Rational> rho;
  for (const auto& s : series) rho.push_back(s.scalar_part());
  return exceptional_term(F, rho);
}

RegularTerm regular_term(const ManifoldPresentation& p, long m) {
  RegularTerm out;
  if (p.quotient) {
    const auto& q = *p.quotient;
    GradedElement w = GradedElement(q.ring) + q.omega0;
    out.value = (exp_nilpotent(w * Rational(m)) * (GradedElement(q.ring) + q.kappa_todd)).integrate();
    out.tag = RegularTag::Supplied;
    out.source = "quotient";
    return out;
  }
  long lo = p.moment(0), hi = p.moment(0);
  for (std::size_t i = 0; i < p.components.size(); ++i) {
    lo = std::min(lo, p.moment(i));
    hi = std::max(hi, p.moment(i));
  }
  if (lo >= 0 || hi <= 0) {
    out.value = 0;
    out.tag = RegularTag::Supplied;
    out.source = "extreme_level";
    return out;
  }
  Rational v = Rational(rr_invariant(p, m));
  for (std::size_t i : zero_level(p)) {
    v -= residue_term(p, i, m);
    if (classify(p.components[i]) == Classification::Indefinite) v -= exceptional_term(p.components[i]);
  }
  v.canonicalize();
  out.value = v;
  out.tag = RegularTag::Diagnostic;
  out.source = "rr_minus_local_terms";
  return out;
}

Rational MainFormulaReport::residue_sum() const {
  Rational s = 0;
  for (const auto& r : residues) s += r.value;
  return s;
}

Rational MainFormulaReport::exceptional_sum() const {
  Rational s = 0;
  for (const auto& e : exceptional) s += e.value;
  return s;
}

MainFormulaReport main_formula_report(const ManifoldPresentation& p, long m) {
  MainFormulaReport r;
  r.m = m;
  r.rr_invariant = rr_invariant(p, m);
  for (std::size_t i : zero_level(p)) {
    const auto& F = p.components[i];
    Classification c = classify(F);
    r.residues.push_back({F.name, c, residue_term(p, i, m)});
    if (c == Classification::Indefinite) r.exceptional.push_back({F.name, exceptional_term(F)});
  }
  r.regular = regular_term(p, m);
  if (r.regular.tag == RegularTag::Supplied)
    r.balance = Rational(r.rr_invariant) == r.regular.value + r.residue_sum() + r.exceptional_sum();
  return r;
}

bool PolynomialFit::exact() const {
  return std::all_of(residual.begin(), residual.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational evaluate_polynomial(const std::vector<Rational>& coefficients, long m) {
  Rational v = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * m + *it;
  return v;
}

PolynomialFit fit_polynomial(const std::vector<Rational>& values, long m_min, int degree) {
  if (static_cast<int>(values.size()) < degree + 1) throw DomainError("not enough samples for the fit");
  const int n = degree + 1;
  // Newton divided differences on nodes m_min, ..., m_min + degree.
  std::vector<Rational> dd(values.begin(), values.begin() + n);
  for (int j = 1; j < n; ++j)
    for (int i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / j;
      dd[i].canonicalize();
    }
  std::vector<Rational> poly{dd[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    // poly = poly * (m - (m_min + i)) + dd[i]
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    const Rational node = m_min + i;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * node;
    }
    next[0] += dd[i];
    poly.swap(next);
  }
  while (poly.size() > 1 && sgn(poly.back()) == 0) poly.pop_back();
  PolynomialFit fit;
  fit.m_min = m_min;
  fit.coefficients = poly;
  fit.values = values;
  for (std::size_t i = n; i < values.size(); ++i)
    fit.residual.push_back(values[i] - evaluate_polynomial(poly, m_min + static_cast<long>(i)));
  return fit;
}

PolynomialFit polynomiality_check(const ManifoldPresentation& p, long m_min, long m_max) {
  const int degree = p.dim / 2;
  if (m_max - m_min < degree + 2) throw DomainError("polynomiality_check needs m_max - m_min >= dim_M/2 + 2");
  std::vector<Rational> values;
  for (long m = m_min; m <= m_max; ++m) values.emplace_back(rr_invariant(p, m));
  return fit_polynomial(values, m_min, degree);
}

}  // namespace equiloc
