#include "equiloc/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "equiloc/parallel.hpp"

namespace equiloc {

namespace {

using Complex = std::complex<double>;

struct Panel {
  double a, b;
  int depth;
  Complex value;
  double error;
  double mag = 0.0;    // Kronrod estimate of the integral of |f|
};

void gk15(const ComplexIntegrand& f, Panel& p) {
  using K = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  const auto& x = K::abscissa();
  const auto& wk = K::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
  Complex f0 = f(c);
  Complex kr = f0 * wk[0], ga = f0 * wg[0];
  double mag = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    Complex fl = f(c - h * x[i]), fr = f(c + h * x[i]);
    Complex s = fl + fr;
    kr += s * wk[i];
    mag += (std::abs(fl) + std::abs(fr)) * wk[i];
    if (i % 2 == 0) ga += s * wg[i / 2];
  }
  p.value = kr * h;
  p.error = std::abs((kr - ga) * h);
  p.mag = mag * std::abs(h);
}

}  // namespace

QuadratureResult integrate(const ComplexIntegrand& f,
                           const std::vector<std::pair<double, double>>& intervals,
                           const QuadratureOptions& opts) {
  double total = 0.0;
  std::vector<Panel> open;
  for (const auto& [a, b] : intervals) {
    if (b <= a) continue;
    total += b - a;
    open.push_back({a, b, 0, {}, 0.0});
  }
  QuadratureResult res;
  std::vector<Panel> done;
  while (!open.empty()) {
    const int n = static_cast<int>(open.size());
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) if (opts.parallel && n > 1)
    for (int i = 0; i < n; ++i) gk15(f, open[i]);
    res.evaluations += 15L * n;
    double scale = 0.0;  // current estimate of the integral of |f|
    for (const auto& p : done) scale += p.mag;
    for (const auto& p : open) scale += p.mag;
    const double tol = std::max(opts.abs_tol, opts.rel_tol * scale);
    std::vector<Panel> next;
    for (const auto& p : open) {
      const double budget = std::max(tol * (p.b - p.a) / total,
                                     50.0 * std::numeric_limits<double>::epsilon() * p.mag);
      const bool exhausted = p.depth >= opts.max_depth || !std::isfinite(p.error) ||
                             static_cast<int>(done.size() + next.size()) >= opts.max_panels;
      if (p.error <= budget || exhausted) {
        if (p.error > budget) res.converged = false;
        done.push_back(p);
      } else {
        const double mid = 0.5 * (p.a + p.b);
        next.push_back({p.a, mid, p.depth + 1, {}, 0.0});
        next.push_back({mid, p.b, p.depth + 1, {}, 0.0});
      }
    }
    open.swap(next);
  }
  std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  Complex sum{}, comp{};
  for (const auto& p : done) {
    Complex y = p.value - comp;
    Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    res.error += p.error;
  }
  res.value = sum;
  res.panels = static_cast<int>(done.size());
  return res;
}

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           const QuadratureOptions& opts) {
  return integrate(f, {{a, b}}, opts);
}

}  // namespace equiloc
