#include "equiloc/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "equiloc/errors.hpp"

namespace equiloc {

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : InputError(diags.empty() ? std::string("invalid presentation")
                               : diags.front().code + ": " + diags.front().message),
      diagnostics(std::move(diags)) {}

Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  auto digits = [](const std::string& t, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  std::size_t slash = s.find('/');
  bool ok = slash == std::string::npos ? digits(s, start, s.size())
                                       : digits(s, start, slash) && digits(s, slash + 1, s.size());
  if (!ok) throw InputError("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (slash != std::string::npos) {
    if (Integer(s.substr(s.find('/') + 1)) == 0) throw InputError("zero denominator in '" + s + "'");
  }
  q.set_str(s, 10);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }
double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace equiloc
