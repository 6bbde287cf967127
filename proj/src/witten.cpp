#include "equiloc/witten.hpp"

#include <algorithm>
#include <boost/math/differentiation/autodiff.hpp>
#include <cmath>
#include <numbers>

#include "equiloc/quadrature.hpp"

namespace equiloc {

namespace {

using boost::math::differentiation::make_fvar;
using Fvar = boost::math::differentiation::autodiff_v1::detail::fvar<double, TestFunction::kMaxOrder>;

// S(t) with u = 1 - t supplied separately so that neither end of the transition loses digits.
Fvar smooth_step(const Fvar& t, const Fvar& u) {
  if (static_cast<double>(t) <= 0.0) return Fvar(0.0);
  if (static_cast<double>(u) <= 0.0) return Fvar(1.0);
  using std::exp;
  Fvar a = exp(-1.0 / t);
  Fvar b = exp(-1.0 / u);
  return a / (a + b);
}

Complex horner(const std::vector<double>& c, Complex y) {
  Complex v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
  return v;
}

// (e^w - sum_{n<j} w^n/n!) / w^j
Complex exp_remainder(int j, Complex w) {
  if (std::abs(w) < 2.0) {
    Complex term = 1.0, sum = 0.0;
    for (int n = 1; n <= j; ++n) term /= static_cast<double>(n);
    for (int n = 0; n < 40; ++n) {
      sum += term;
      term *= w / static_cast<double>(n + j + 1);
    }
    return sum;
  }
  Complex head = 0.0, term = 1.0;
  for (int n = 0; n < j; ++n) {
    head += term;
    term *= w / static_cast<double>(n + 1);
  }
  return (std::exp(w) - head) / std::pow(w, j);
}

// One fixed-point term near 0: e^{a y} (G - P)(y) + sum_j p_j y^{-j} e^{a y}. Summed over all
// components the polynomial pieces of the second part are exactly the (cancelling) negative part,
// so only the remainders p_j a^j (e^{a y} - ...)/(a y)^j are kept.
struct LocalTerm {
  double rate = 0.0;  // a = -m J
  std::vector<double> taylor;
  std::vector<double> principal;  // principal[j] multiplies y^{-j}
};

LocalTerm local_term(const EquivariantClassAtF& rho, double rate, long m, int order) {
  LocalTerm t;
  t.rate = rate;
  t.taylor.assign(order + 1, 0.0);
  for (const auto& [e, v] : fixed_point_series(rho, m, order)) {
    if (e >= 0) {
      t.taylor[e] = v.get_d();
    } else {
      if (static_cast<int>(t.principal.size()) <= -e) t.principal.resize(-e + 1, 0.0);
      t.principal[-e] = v.get_d();
    }
  }
  return t;
}

Complex near_zero_value(const std::vector<LocalTerm>& terms, Complex y) {
  Complex sum = 0.0, comp = 0.0;
  for (const auto& t : terms) {
    const Complex w = t.rate * y;
    Complex v = std::exp(w) * horner(t.taylor, y);
    if (t.rate != 0.0) {
      double apow = 1.0;
      for (std::size_t j = 1; j < t.principal.size(); ++j) {
        apow *= t.rate;
        if (t.principal[j] != 0.0) v += t.principal[j] * apow * exp_remainder(static_cast<int>(j), w);
      }
    }
    Complex yk = v - comp;
    Complex s2 = sum + yk;
    comp = (s2 - sum) - yk;
    sum = s2;
  }
  return sum;
}

void require_calibrated(const ClassFamily& rho) {
  for (const auto& r : rho)
    if (std::abs(r.scale - kCalibratedScale) > 1e-15)
      throw DomainError("the Witten series pathway needs the calibrated scale constant");
}

Side side_of(Classification c) {
  switch (c) {
    case Classification::PositiveDefinite: return Side::Plus;
    case Classification::NegativeDefinite: return Side::Minus;
    default: return Side::Average;
  }
}

std::vector<std::pair<double, double>> clip(double lo, double hi, double a, double b) {
  double l = std::max(lo, a), h = std::min(hi, b);
  if (h > l) return {{l, h}};
  return {};
}

}  // namespace

std::array<double, TestFunction::kMaxOrder + 1> TestFunction::derivatives(double x) const {
  Fvar xv = make_fvar<double, kMaxOrder>(x);
  Fvar d = (x >= center) ? Fvar(xv - center) : Fvar(center - xv);
  Fvar t = (delta2 - d) / (delta2 - delta1);
  Fvar u = (d - delta1) / (delta2 - delta1);
  Fvar s = smooth_step(t, u);
  std::array<double, kMaxOrder + 1> out{};
  for (int n = 0; n <= kMaxOrder; ++n) out[n] = s.derivative(n);
  return out;
}

double TestFunction::operator()(double x) const {
  const double d = std::abs(x - center);
  const double t = (delta2 - d) / (delta2 - delta1), u = (d - delta1) / (delta2 - delta1);
  if (t <= 0.0) return 0.0;
  if (u <= 0.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / u);
  return a / (a + b);
}

double TestFunction::derivative(int n, double x) const {
  if (n < 0 || n > kMaxOrder) throw DomainError("test function derivative order out of range");
  if (n == 0) return (*this)(x);
  return derivatives(x)[n];
}

TestFunction default_bump() { return TestFunction{}; }

std::vector<Rational> localized_series(const ManifoldPresentation& p, const ClassFamily& rho, long m,
                                       int order) {
  if (rho.size() != p.components.size()) throw DomainError("one class per component is required");
  std::map<int, Rational> total;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    YSeries g = fixed_point_series(rho[i], m, order);
    if (g.empty()) continue;
    const int lowest = g.begin()->first;
    const Rational rate = -Rational(m) * Rational(p.moment(i));
    // e^{rate y} up to the exponent needed for y^order
    std::vector<Rational> ex{Rational(1)};
    for (int n = 1; n <= order - lowest; ++n) {
      Rational next = ex.back() * rate / n;
      next.canonicalize();
      ex.push_back(next);
    }
    for (const auto& [e, c] : g)
      for (int n = 0; e + n <= order; ++n) total[e + n] += c * ex[n];
  }
  for (const auto& [e, c] : total)
    if (e < 0 && sgn(c) != 0)
      throw CancellationFailure("coefficient of y^" + std::to_string(e) +
                                " does not cancel in the localized integrand");
  std::vector<Rational> out(order + 1);
  for (const auto& [e, c] : total)
    if (e >= 0) out[e] = c;
  return out;
}

WittenPairResult witten_pair_detail(const ManifoldPresentation& p, const ClassFamily& rho,
                                    const TestFunction& phi, long m, const WittenOptions& opts) {
  require_calibrated(rho);
  WittenPairResult res;
  res.eta = opts.eta_factor / std::sqrt(static_cast<double>(std::max(m, 1L)));
  const double eta = res.eta;
  const Complex c = kCalibratedScale;
  // Exact certificate: the Laurent expansion of the whole sum has no negative powers.
  localized_series(p, rho, m, 0);
  int K = opts.initial_order > 0 ? opts.initial_order : 2 * p.dim + 4;
  std::vector<LocalTerm> local;
  while (true) {
    local.clear();
    for (std::size_t i = 0; i < rho.size(); ++i)
      local.push_back(local_term(rho[i], -static_cast<double>(m) * static_cast<double>(p.moment(i)), m, K));
    double worst = 0.0;
    for (double frac : {0.5, 0.625, 0.75, 0.875, 1.0})
      for (double sign : {-1.0, 1.0}) {
        const double x = sign * frac * eta;
        const Complex direct = dh_inner(p, rho, m, x);
        worst = std::max(worst, std::abs(direct - near_zero_value(local, c * x)) / std::max(1.0, std::abs(direct)));
      }
    res.agreement = worst;
    if (worst <= opts.agreement) break;
    if (K >= opts.max_order)
      throw CancellationFailure("series and direct evaluation disagree by " + std::to_string(worst) +
                                " at order " + std::to_string(K));
    K = std::min(K + 8, opts.max_order);
  }
  res.order = K;
  QuadratureOptions q{.abs_tol = opts.abs_tol, .parallel = opts.parallel};
  const double lo = phi.support_lo(), hi = phi.support_hi();
  auto inner_f = [&](double x) { return phi(x) * near_zero_value(local, c * x); };
  auto outer_f = [&](double x) { return phi(x) * dh_inner(p, rho, m, x); };
  auto inner_iv = clip(lo, hi, -eta, eta);
  auto outer_iv = clip(lo, hi, lo, -eta);
  for (auto iv : clip(lo, hi, eta, hi)) outer_iv.push_back(iv);
  res.inner = inner_iv.empty() ? Complex{} : integrate(inner_f, inner_iv, q).value;
  res.outer = outer_iv.empty() ? Complex{} : integrate(outer_f, outer_iv, q).value;
  res.value = res.inner + res.outer;
  return res;
}

Complex witten_pair(const ManifoldPresentation& p, const ClassFamily& rho, const TestFunction& phi,
                    long m, const WittenOptions& opts) {
  return witten_pair_detail(p, rho, phi, m, opts).value;
}

Complex dist_pair(int k, Side side, const TestFunction& phi, double abs_tol) {
  if (k < 1) throw DomainError("dist_pair needs k >= 1");
  if (k > TestFunction::kMaxOrder)
    throw DomainError("dist_pair needs derivative " + std::to_string(k) + " of the test function");
  const int n = k - 1;
  // PV of psi(x)/x with psi = phi^{(n)}, integrated by parts: -integral of log|x| phi^{(k)}(x)
  auto f = [&](double x) { return Complex(-std::log(std::abs(x)) * phi.derivative(k, x), 0.0); };
  QuadratureOptions q;
  q.abs_tol = abs_tol;
  q.rel_tol = 1e-13;  // phi^{(k)} reaches 1e8 by k = 5
  std::vector<std::pair<double, double>> iv;
  const double lo = phi.support_lo(), hi = phi.support_hi();
  if (lo < 0.0) iv.emplace_back(lo, std::min(hi, 0.0));
  if (hi > 0.0) iv.emplace_back(std::max(lo, 0.0), hi);
  Complex pv = integrate(f, iv, q).value;
  const double jump = std::numbers::pi * phi.derivative(n, 0.0);
  Complex v = pv;
  if (side == Side::Plus) v -= Complex(0.0, jump);
  if (side == Side::Minus) v += Complex(0.0, jump);
  return v / factorial(n).get_d();
}

ExpansionResult expansion_rhs_detail(const ManifoldPresentation& p, const TestFunction& phi, long m,
                                     const std::vector<std::size_t>& drop, const WittenOptions& opts) {
  if (std::abs(phi.center) >= phi.delta1)
    throw DomainError("expansion_rhs needs a test function identically 1 near 0");
  ExpansionResult out;
  RegularTerm reg = regular_term(p, m);
  out.regular = reg.value;
  out.regular_tag = reg.tag;
  out.exceptional = 0;
  const ClassFamily todd = equivariant_todd(p);
  const Complex c = kCalibratedScale;
  const double lo = phi.support_lo(), hi = phi.support_hi();
  const double reach = std::max(std::abs(lo), std::abs(hi));
  constexpr int kTaylor = 40;
  constexpr double kTaylorRadius = 0.5;  // in |y|
  QuadratureOptions q{.abs_tol = opts.abs_tol, .parallel = opts.parallel};
  Complex total = Complex(out.regular.get_d(), 0.0);
  for (std::size_t i : zero_level(p)) {
    const FixedComponent& F = p.components[i];
    const Classification cls = classify(F);
    if (cls == Classification::Indefinite) out.exceptional += exceptional_term(F);
    if (std::find(drop.begin(), drop.end(), i) != drop.end()) continue;
    int kmax = 0;
    for (int k : F.weights()) kmax = std::max(kmax, std::abs(k));
    if (reach * kmax >= 1.0) throw DomainError("test function support reaches a pole of the fixed-point term");
    YSeries g = fixed_point_series(todd[i], m, kTaylor);
    std::vector<double> principal;  // principal[j] multiplies y^{-j}
    std::vector<double> taylor(kTaylor + 1, 0.0);
    for (const auto& [e, v] : g) {
      if (e < 0) {
        if (static_cast<int>(principal.size()) <= -e) principal.resize(-e + 1, 0.0);
        principal[-e] = v.get_d();
      } else {
        taylor[e] = v.get_d();
      }
    }
    ExpansionTerm term{F.name, side_of(cls), {}, {}};
    for (std::size_t j = 1; j < principal.size(); ++j)
      if (principal[j] != 0.0)
        term.singular += principal[j] * std::pow(c, -static_cast<int>(j)) * dist_pair(static_cast<int>(j), term.side, phi);
    const EquivariantClassAtF& rho = todd[i];
    auto analytic = [&](double x) -> Complex {
      const Complex y = c * x;
      if (std::abs(y) <= kTaylorRadius) return phi(x) * horner(taylor, y);
      Complex pp = 0.0, yinv = 1.0 / y, ypow = 1.0;
      for (std::size_t j = 1; j < principal.size(); ++j) {
        ypow *= yinv;
        pp += principal[j] * ypow;
      }
      return phi(x) * (fixed_point_value(rho, m, x) - pp);
    };
    term.analytic = integrate(analytic, lo, hi, q).value;
    total += term.singular + term.analytic;
    out.terms.push_back(term);
  }
  out.exceptional.canonicalize();
  total += out.exceptional.get_d();
  out.value = total;
  return out;
}

Complex expansion_rhs(const ManifoldPresentation& p, const TestFunction& phi, long m) {
  return expansion_rhs_detail(p, phi, m).value;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

WittenCheckReport decay_check(const ManifoldPresentation& p, const TestFunction& phi,
                              const std::vector<long>& m_list, const std::vector<std::size_t>& drop,
                              const WittenOptions& opts) {
  if (m_list.size() < 4) throw DomainError("decay_check needs at least four values of m");
  WittenCheckReport r;
  const ClassFamily todd = equivariant_todd(p);
  std::vector<double> xs, ys;
  for (long m : m_list) {
    if (m < 1) throw DomainError("decay_check needs m >= 1");
    Complex lhs = witten_pair(p, todd, phi, m, opts);
    Complex rhs = expansion_rhs_detail(p, phi, m, drop, opts).value;
    r.m.push_back(m);
    r.lhs.push_back(lhs);
    r.rhs.push_back(rhs);
    r.deviation.push_back(std::abs(lhs - rhs));
    xs.push_back(static_cast<double>(m));
    ys.push_back(std::max(r.deviation.back(), r.floor));
  }
  r.exponent = loglog_slope(xs, ys);
  return r;
}

}  // namespace equiloc
