#pragma once

// Brute-force weight enumeration for projective-space builders. Independent of the fixed-point
// engine: it counts monomial sections directly.

#include <map>
#include <vector>

#include "equiloc/zrational.hpp"

namespace equiloc {

using WeightMultiset = std::map<long, Integer>;  // weight -> multiplicity

inline constexpr int kOracleMaxN = 4;
inline constexpr long kOracleMaxDegree = 60;

// Monomials of degree m*d in n+1 variables; weight sum a_i w_i - m d min(w).
WeightMultiset cpn_weights(const std::vector<int>& weights, int d, long m);
WeightMultiset convolve(const WeightMultiset& a, const WeightMultiset& b);
WeightMultiset shift(const WeightMultiset& a, long s);
Integer invariant_count(const WeightMultiset& ws);
LaurentPolynomial to_laurent(const WeightMultiset& ws);

}  // namespace equiloc
