#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace equiloc {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p", "p/q" with optional surrounding whitespace; result is reduced.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
double to_double(const Rational& q);
Rational factorial(int n);
Integer binomial(int n, int k);
bool is_integer(const Rational& q);

}  // namespace equiloc
