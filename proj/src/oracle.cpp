#include "equiloc/oracle.hpp"

#include <algorithm>
#include <limits>

namespace equiloc {

namespace {

void enumerate(const std::vector<int>& w, std::size_t i, long remaining, long weight, WeightMultiset& out) {
  if (i + 1 == w.size()) {
    out[weight + remaining * w[i]] += 1;
    return;
  }
  for (long a = 0; a <= remaining; ++a) enumerate(w, i + 1, remaining - a, weight + a * w[i], out);
}

}  // namespace

WeightMultiset cpn_weights(const std::vector<int>& weights, int d, long m) {
  if (weights.size() < 2) throw DomainError("oracle needs at least two weights");
  if (static_cast<int>(weights.size()) - 1 > kOracleMaxN) throw DomainError("oracle limit: n <= 4");
  const long total = m * d;
  if (total < 0) throw DomainError("oracle needs m*d >= 0");
  if (total > kOracleMaxDegree) throw DomainError("oracle limit: m*d <= 60");
  WeightMultiset out;
  enumerate(weights, 0, total, 0, out);
  const long wmin = *std::min_element(weights.begin(), weights.end());
  return shift(out, -total * wmin);
}

WeightMultiset convolve(const WeightMultiset& a, const WeightMultiset& b) {
  WeightMultiset out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) out[wa + wb] += ca * cb;
  return out;
}

WeightMultiset shift(const WeightMultiset& a, long s) {
  WeightMultiset out;
  for (const auto& [w, c] : a) out.emplace(w + s, c);
  return out;
}

Integer invariant_count(const WeightMultiset& ws) {
  auto it = ws.find(0);
  return it == ws.end() ? Integer(0) : it->second;
}

LaurentPolynomial to_laurent(const WeightMultiset& ws) {
  LaurentPolynomial out;
  for (const auto& [w, c] : ws)
    if (c != 0) out[static_cast<int>(w)] = Rational(c);
  return out;
}

}  // namespace equiloc
