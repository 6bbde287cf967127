#include "equiloc/localization.hpp"

#include <cmath>
#include <numbers>

#include "equiloc/parallel.hpp"

namespace equiloc {

namespace {

GradedElement lift(const GradedElement& g, const RingPtr& ring) {
  if (g.ring()) return g;
  return GradedElement(ring) + g;
}

std::vector<std::pair<int, GradedElement>> roots_of(const FixedComponent& F) {
  std::vector<std::pair<int, GradedElement>> out;
  for (const auto& b : F.blocks)
    for (const auto& r : b.roots) out.emplace_back(b.weight, lift(r, F.ring));
  return out;
}

GradedElement mass(const FixedComponent& F, long m) {
  return lift(F.todd, F.ring) * exp_nilpotent(lift(F.omega, F.ring) * Rational(m));
}

struct Kahan {
  Complex sum{}, c{};
  void add(Complex v) {
    Complex y = v - c;
    Complex t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

using RingSeries = std::map<int, GradedElement>;

RingSeries multiply(const RingSeries& a, const RingSeries& b, int max_exponent) {
  RingSeries out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      if (ea + eb > max_exponent) continue;
      GradedElement prod = ca * cb;
      if (prod.is_zero()) continue;
      auto [it, inserted] = out.try_emplace(ea + eb, prod);
      if (!inserted) it->second += prod;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

ScalarZRational chi_tilde(const FixedComponent& F, long m) {
  RingZRational f = z_monomial(0, mass(F, m));
  for (const auto& [k, a] : roots_of(F)) f = f * inv_one_minus(k, a);
  return integrate_over_F(f);
}

LaurentPolynomial character(const ManifoldPresentation& p, long m) {
  const int n = static_cast<int>(p.components.size());
  std::vector<ScalarZRational> terms(n);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const auto& F = p.components[i];
    terms[i] = shift(chi_tilde(F, m), static_cast<int>(m * p.moment(F)));
  }
  ScalarZRational total;
  for (const auto& t : terms) total = total + t;
  return to_laurent_polynomial(total);
}

Integer rr_total(const ManifoldPresentation& p, long m) {
  Rational v = evaluate_at_one(character(p, m));
  if (!is_integer(v)) throw NotAPolynomial("character at z = 1 is not an integer");
  return v.get_num();
}

std::vector<GradedElement> EquivariantClassAtF::series(int n) const {
  const RingPtr& ring = component.ring;
  if (kind == ClassKind::Polynomial) {
    std::vector<GradedElement> out(n + 1, GradedElement(ring));
    for (int i = 0; i <= n && i < static_cast<int>(poly.size()); ++i) out[i] = lift(poly[i], ring);
    return out;
  }
  const int nil = nilpotency_bound(ring);
  auto t = todd_coefficients(n + nil);
  std::vector<GradedElement> out(n + 1, GradedElement(ring));
  out[0] = lift(component.todd, ring);
  for (const auto& [k, a] : roots_of(component)) {
    // td(k y - a) = sum_p y^p sum_j t_{p+j} C(p+j, j) k^p (-a)^j
    std::vector<GradedElement> apow{GradedElement(ring, Rational(1))};
    for (int j = 1; j <= nil; ++j) apow.push_back(apow.back() * (-a));
    std::vector<GradedElement> factor(n + 1, GradedElement(ring));
    Rational kp = 1;
    for (int q = 0; q <= n; ++q) {
      for (int j = 0; j <= nil; ++j) {
        if (apow[j].is_zero()) break;
        factor[q] += apow[j] * (t[q + j] * Rational(binomial(q + j, j)) * kp);
      }
      kp *= k;
    }
    std::vector<GradedElement> next(n + 1, GradedElement(ring));
    for (int i = 0; i <= n; ++i) {
      if (out[i].is_zero()) continue;
      for (int j = 0; i + j <= n; ++j) next[i + j] += out[i] * factor[j];
    }
    out.swap(next);
  }
  return out;
}

EquivariantClassAtF equivariant_todd_at_F(const FixedComponent& F, int dim_M, Complex scale) {
  EquivariantClassAtF rho;
  rho.component = F;
  rho.kind = ClassKind::Todd;
  rho.scale = scale;
  rho.order = 2 * dim_M;
  return rho;
}

ClassFamily equivariant_todd(const ManifoldPresentation& p, Complex scale) {
  ClassFamily out;
  for (const auto& F : p.components) out.push_back(equivariant_todd_at_F(F, p.dim, scale));
  return out;
}

ClassFamily constant_class(const ManifoldPresentation& p, const Rational& c, Complex scale) {
  ClassFamily out;
  for (const auto& F : p.components) {
    EquivariantClassAtF rho;
    rho.component = F;
    rho.kind = ClassKind::Polynomial;
    rho.poly = {GradedElement(F.ring, c)};
    rho.scale = scale;
    rho.order = 2 * p.dim;
    out.push_back(std::move(rho));
  }
  return out;
}

YSeries fixed_point_series(const EquivariantClassAtF& rho, long m, int max_exponent) {
  const FixedComponent& F = rho.component;
  const RingPtr& ring = F.ring;
  const int nil = nilpotency_bound(ring);
  // 1/(k y - a) = sum_j a^j / (k y)^{j+1}
  RingSeries inv_euler{{0, GradedElement(ring, Rational(1))}};
  int lowest = 0;
  for (const auto& [k, a] : roots_of(F)) {
    RingSeries f;
    GradedElement apow(ring, Rational(1));
    Rational kinv = Rational(1, k);
    kinv.canonicalize();
    Rational kpow = kinv;
    for (int j = 0; j <= nil && !apow.is_zero(); ++j) {
      f.emplace(-j - 1, apow * kpow);
      apow = apow * a;
      kpow *= kinv;
    }
    lowest -= 1 + nil;
    inv_euler = multiply(inv_euler, f, max_exponent + 0);
  }
  int need = max_exponent - lowest;
  RingSeries rho_series;
  if (need >= 0) {
    auto s = rho.series(need);
    for (int n = 0; n <= need; ++n)
      if (!s[n].is_zero()) rho_series.emplace(n, s[n]);
  }
  RingSeries prod = multiply(rho_series, inv_euler, max_exponent);
  GradedElement w = exp_nilpotent(lift(F.omega, ring) * Rational(m));
  YSeries out;
  for (const auto& [e, c] : prod) {
    Rational v = (c * w).integrate();
    if (sgn(v) != 0) out[e] = v;
  }
  return out;
}

Complex fixed_point_value(const EquivariantClassAtF& rho, long m, double x) {
  if (x == 0.0) throw DomainError("fixed-point term is singular at x = 0");
  const FixedComponent& F = rho.component;
  const RingPtr& ring = F.ring;
  const Complex y = rho.scale * x;
  const ComplexGraded one(ring, Complex(1.0));
  ComplexGraded acc = to_complex(exp_nilpotent(lift(F.omega, ring) * Rational(m)));
  if (rho.kind == ClassKind::Todd) {
    acc = acc * to_complex(lift(F.todd, ring));
    for (const auto& [k, a] : roots_of(F)) {
      // td(k y - a) / (k y - a) = 1 / (1 - q e^a),  q = e^{-k y}
      const Complex q = std::exp(-static_cast<double>(k) * y);
      const Complex r = q / (1.0 - q);
      ComplexGraded u = exp_nilpotent(to_complex(a)) - one;
      ComplexGraded f(ring), power = one;
      Complex coef = 1.0 / (1.0 - q);
      while (!power.is_zero()) {
        f += power * coef;
        power = power * u;
        coef *= r;
      }
      acc = acc * f;
    }
  } else {
    ComplexGraded rv(ring);
    Complex ypow = 1.0;
    for (const auto& c : rho.poly) {
      rv += to_complex(lift(c, ring)) * ypow;
      ypow *= y;
    }
    acc = acc * rv;
    for (const auto& [k, a] : roots_of(F)) {
      const Complex ky = static_cast<double>(k) * y;
      ComplexGraded ac = to_complex(a);
      ComplexGraded f(ring), power = one;
      Complex coef = 1.0 / ky;
      while (!power.is_zero()) {
        f += power * coef;
        power = power * ac;
        coef /= ky;
      }
      acc = acc * f;
    }
  }
  return acc.integrate();
}

Complex dh_inner(const ManifoldPresentation& p, const ClassFamily& rho, long m, double x) {
  if (x == 0.0) throw DomainError("dh_inner is undefined at x = 0");
  if (rho.size() != p.components.size()) throw DomainError("one class per component is required");
  Kahan sum;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(m) *
                         static_cast<double>(p.moment(i)) * x;
    sum.add(std::polar(1.0, phase) * fixed_point_value(rho[i], m, x));
  }
  return sum.sum;
}

double kirillov_check(const ManifoldPresentation& p, long m, const std::vector<double>& xs,
                      Complex scale) {
  const LaurentPolynomial chi = character(p, m);
  const ClassFamily rho = equivariant_todd(p, scale);
  double worst = 0.0;
  for (double x : xs) {
    Complex lhs = evaluate(chi, std::polar(1.0, 2.0 * std::numbers::pi * x));
    worst = std::max(worst, std::abs(lhs - dh_inner(p, rho, m, x)));
  }
  return worst;
}

}  // namespace equiloc
