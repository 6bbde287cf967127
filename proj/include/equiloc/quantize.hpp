#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equiloc/localization.hpp"

namespace equiloc {

enum class Classification { PositiveDefinite, NegativeDefinite, Indefinite };

Classification classify(const FixedComponent& F);
std::string to_string(Classification c);

// z^0 coefficient of the character.
Integer rr_invariant(const ManifoldPresentation& p, long m);

// Indices of the components with J(F) = 0.
std::vector<std::size_t> zero_level(const ManifoldPresentation& p);

// Res_0(z^{-1} chi_tilde) at a minimum, Res_infinity at a maximum, their mean otherwise.
Rational residue_term(const ManifoldPresentation& p, std::size_t index, long m);
std::string prescription(Classification c);

// Isolated indefinite F only: Unsupported for dim_F > 0, NotIndefinite for definite F.
Rational exceptional_term(const FixedComponent& F);
// Same with an explicit rho (scalar series in y).
Rational exceptional_term(const FixedComponent& F, const std::vector<Rational>& rho_series);

enum class RegularTag { Supplied, Diagnostic };

struct RegularTerm {
  Rational value;
  RegularTag tag = RegularTag::Supplied;
  std::string source;
};

RegularTerm regular_term(const ManifoldPresentation& p, long m);
std::string to_string(RegularTag t);

struct ResidueEntry {
  std::string component;
  Classification classification;
  Rational value;
};

struct ExceptionalEntry {
  std::string component;
  Rational value;
};

struct MainFormulaReport {
  long m = 0;
  Integer rr_invariant;
  std::vector<ResidueEntry> residues;
  std::vector<ExceptionalEntry> exceptional;
  RegularTerm regular;
  std::optional<bool> balance;  // only when the regular term is supplied

  Rational residue_sum() const;
  Rational exceptional_sum() const;
};

MainFormulaReport main_formula_report(const ManifoldPresentation& p, long m);

struct PolynomialFit {
  long m_min = 0;
  std::vector<Rational> coefficients;  // ascending powers of m
  std::vector<Rational> values;        // sampled at m_min, m_min + 1, ...
  std::vector<Rational> residual;      // at the points not used by the fit
  bool exact() const;
};

// Exact fit of degree <= dim_M / 2 through the first dim_M / 2 + 1 values.
PolynomialFit polynomiality_check(const ManifoldPresentation& p, long m_min, long m_max);
// Same fit applied to a value sequence starting at m_min.
PolynomialFit fit_polynomial(const std::vector<Rational>& values, long m_min, int degree);
Rational evaluate_polynomial(const std::vector<Rational>& coefficients, long m);

}  // namespace equiloc
