#pragma once

// Breadth-first adaptive Gauss-Kronrod (7/15). Each round evaluates all open panels, in parallel
// when enabled; accepted panels are summed in position order, so serial and parallel runs agree
// bit for bit.

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace equiloc {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;  // relative to the integral of |f|
  int max_depth = 48;
  int max_panels = 1 << 20;
  bool parallel = true;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  long evaluations = 0;
  int panels = 0;
  bool converged = true;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

QuadratureResult integrate(const ComplexIntegrand& f,
                           const std::vector<std::pair<double, double>>& intervals,
                           const QuadratureOptions& opts = {});
QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace equiloc
