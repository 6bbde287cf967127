#pragma once

#include <array>
#include <vector>

#include "equiloc/localization.hpp"
#include "equiloc/quantize.hpp"

namespace equiloc {

// phi(x) = S((delta2 - |x - center|) / (delta2 - delta1)) with S(t) = f(t) / (f(t) + f(1 - t)),
// f(t) = e^{-1/t}: identically 1 on |x - center| <= delta1, 0 outside |x - center| < delta2.
struct TestFunction {
  static constexpr int kMaxOrder = 12;

  double delta1 = 0.1;
  double delta2 = 0.3;
  double center = 0.0;

  double operator()(double x) const;
  std::array<double, kMaxOrder + 1> derivatives(double x) const;
  double derivative(int n, double x) const;
  double support_lo() const { return center - delta2; }
  double support_hi() const { return center + delta2; }
};

TestFunction default_bump();

struct WittenOptions {
  double abs_tol = 1e-10;
  double eta_factor = 0.1;   // eta = eta_factor / sqrt(m)
  int initial_order = -1;    // K; -1 means 2 dim_M + 4
  int max_order = 240;
  double agreement = 1e-9;
  bool parallel = true;
};

struct WittenPairResult {
  Complex value;
  Complex outer;
  Complex inner;
  double eta = 0.0;
  int order = 0;
  double agreement = 0.0;  // worst series/direct mismatch on the annulus
};

// Coefficients s_n of Sum_F e^{-m J y} integral_F e^{m omega} rho_F / e_F in y; throws
// CancellationFailure if a negative power survives.
std::vector<Rational> localized_series(const ManifoldPresentation& p, const ClassFamily& rho, long m,
                                       int order);

WittenPairResult witten_pair_detail(const ManifoldPresentation& p, const ClassFamily& rho,
                                    const TestFunction& phi, long m, const WittenOptions& opts = {});
Complex witten_pair(const ManifoldPresentation& p, const ClassFamily& rho, const TestFunction& phi,
                    long m, const WittenOptions& opts = {});

enum class Side { Plus, Minus, Average };

// <(x +- i0)^{-k}, phi> = <(x +- i0)^{-1}, phi^{(k-1)}> / (k-1)!
Complex dist_pair(int k, Side side, const TestFunction& phi, double abs_tol = 1e-12);

struct ExpansionTerm {
  std::string component;
  Side side;
  Complex singular;  // distribution pairings of the principal part
  Complex analytic;  // integral of the remainder against phi
};

struct ExpansionResult {
  Complex value;
  Rational regular;
  RegularTag regular_tag = RegularTag::Supplied;
  Rational exceptional;
  std::vector<ExpansionTerm> terms;
};

// drop: indices of zero-level components whose pairing term is left out (negative controls).
ExpansionResult expansion_rhs_detail(const ManifoldPresentation& p, const TestFunction& phi, long m,
                                     const std::vector<std::size_t>& drop = {},
                                     const WittenOptions& opts = {});
Complex expansion_rhs(const ManifoldPresentation& p, const TestFunction& phi, long m);

struct WittenCheckReport {
  std::vector<long> m;
  std::vector<Complex> lhs;
  std::vector<Complex> rhs;
  std::vector<double> deviation;
  double floor = 1e-8;
  double exponent = 0.0;  // least-squares slope of log max(deviation, floor) against log m
};

WittenCheckReport decay_check(const ManifoldPresentation& p, const TestFunction& phi,
                              const std::vector<long>& m_list,
                              const std::vector<std::size_t>& drop = {},
                              const WittenOptions& opts = {});

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace equiloc
