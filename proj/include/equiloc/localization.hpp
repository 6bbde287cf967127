#pragma once

// Fixed-point engine. The normal variable is y = c*x with the calibrated constant c = -2*pi*i,
// so e^{2 pi i k x} = e^{-k y} and z = e^{2 pi i x} = e^{-y}.
//
// Calibration: with roots a as stored (fixed-point factor (1 - z^k e^a)^{-1}), the equivariant
// Todd class at F is Td(F) prod td(k y - a) and the Euler class is prod (k y - a). Then
// td(k y - a) / (k y - a) = 1 / (1 - e^{-k y + a}) = 1 / (1 - z^k e^a), which makes the Kirillov
// side equal to the character term by term. On CP^1 with rho = 1 the localized integral is
// (1 - e^{2 pi i m x}) / (c x), and matching the Duistermaat-Heckman value
// (e^{2 pi i m x} - 1) / (2 pi i x) forces c = -2 pi i.

#include <map>
#include <vector>

#include "equiloc/model.hpp"
#include "equiloc/zrational.hpp"

namespace equiloc {

inline const Complex kCalibratedScale{0.0, -6.283185307179586476925286766559};

ScalarZRational chi_tilde(const FixedComponent& F, long m);
// Sum_F z^{m J(F)} chi_tilde_F; throws NotAPolynomial when poles survive.
LaurentPolynomial character(const ManifoldPresentation& p, long m);
Integer rr_total(const ManifoldPresentation& p, long m);

enum class ClassKind { Polynomial, Todd };

// rho_F as a function of y = scale * x with coefficients in the component ring.
struct EquivariantClassAtF {
  FixedComponent component;
  ClassKind kind = ClassKind::Polynomial;
  std::vector<GradedElement> poly;  // Polynomial kind: coefficient of y^n
  Complex scale = kCalibratedScale;
  int order = 0;                    // default truncation for series()

  // Taylor coefficients in y up to y^order.
  std::vector<GradedElement> series(int order) const;
  std::vector<GradedElement> series() const { return series(order); }
};

using ClassFamily = std::vector<EquivariantClassAtF>;  // one per component, document order

EquivariantClassAtF equivariant_todd_at_F(const FixedComponent& F, int dim_M,
                                          Complex scale = kCalibratedScale);
ClassFamily equivariant_todd(const ManifoldPresentation& p, Complex scale = kCalibratedScale);
ClassFamily constant_class(const ManifoldPresentation& p, const Rational& c,
                           Complex scale = kCalibratedScale);

// Laurent series in y: exponent -> coefficient.
using YSeries = std::map<int, Rational>;

// Laurent expansion in y of  integral_F e^{m omega} rho_F(y) / e_F(y), exponents <= max_exponent.
YSeries fixed_point_series(const EquivariantClassAtF& rho, long m, int max_exponent);
// Numeric value of the same quantity at real x != 0.
Complex fixed_point_value(const EquivariantClassAtF& rho, long m, double x);

// Sum_F e^{2 pi i m x J(F)} integral_F e^{m omega_F} rho_F(x) / e_F(x), Kahan-summed in document order.
Complex dh_inner(const ManifoldPresentation& p, const ClassFamily& rho, long m, double x);

// max_x |character(e^{2 pi i x}) - dh_inner(todd)|.
double kirillov_check(const ManifoldPresentation& p, long m, const std::vector<double>& xs,
                      Complex scale = kCalibratedScale);

}  // namespace equiloc
