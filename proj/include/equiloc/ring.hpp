#pragma once

// Truncated graded-commutative rings with even generators and an integration functional.
// Elements are sparse maps monomial -> coefficient; terms above the truncation degree are dropped.

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "equiloc/errors.hpp"
#include "equiloc/rational.hpp"

namespace equiloc {

using Complex = std::complex<double>;
using Monomial = std::vector<int>;

struct Generator {
  std::string name;
  int degree = 2;
};

struct RingSpec {
  std::vector<Generator> generators;
  int truncation = 0;
  // Top-degree monomials; monomials absent from the table integrate to 0.
  std::map<Monomial, Rational> integrals;

  int degree(const Monomial& mono) const;
  Monomial unit() const { return Monomial(generators.size(), 0); }
  int index_of(const std::string& name) const;  // -1 when absent
  // Throws InputError describing the first violated invariant.
  void check() const;
  bool operator==(const RingSpec& other) const;
};

using RingPtr = std::shared_ptr<const RingSpec>;

RingPtr make_ring(std::vector<Generator> generators, int truncation,
                  std::map<Monomial, Rational> integrals);
RingPtr point_ring();
// H*(CP^n): one degree-2 generator, h^{n+1} = 0, integral of h^n is 1.
RingPtr projective_ring(const std::string& generator, int n);
// Generators concatenated (right-hand names renamed on collision), truncations added,
// integration table is the product table.
RingPtr tensor(const RingPtr& a, const RingPtr& b);
bool same_ring(const RingPtr& a, const RingPtr& b);

namespace detail {
inline bool is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool is_zero(const Complex& c) { return c == Complex{}; }
template <class S>
S from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline Complex from_rational<Complex>(const Rational& q) { return Complex(q.get_d(), 0.0); }
void require_same(const RingPtr& a, const RingPtr& b);
}  // namespace detail

template <class S>
class Graded {
 public:
  using Scalar = S;

  Graded() = default;
  explicit Graded(RingPtr ring) : ring_(std::move(ring)) {}
  Graded(RingPtr ring, const S& scalar) : ring_(std::move(ring)) {
    if (!detail::is_zero(scalar)) terms_[ring_->unit()] = scalar;
  }

  static Graded generator(RingPtr ring, std::size_t index, const S& coeff = S(1)) {
    Graded g(ring);
    Monomial mono = ring->unit();
    mono.at(index) = 1;
    g.add_term(mono, coeff);
    return g;
  }

  const RingPtr& ring() const { return ring_; }
  const std::map<Monomial, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? S(0) : it->second;
  }
  S scalar_part() const { return ring_ ? coefficient(ring_->unit()) : S(0); }

  void add_term(const Monomial& mono, const S& c) {
    if (detail::is_zero(c)) return;
    if (ring_->degree(mono) > ring_->truncation) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero(it->second)) terms_.erase(it);
    }
  }

  Graded homogeneous_part(int deg) const {
    Graded out(ring_);
    for (const auto& [mono, c] : terms_)
      if (ring_->degree(mono) == deg) out.terms_.emplace(mono, c);
    return out;
  }

  bool is_pure_degree(int deg) const {
    for (const auto& [mono, c] : terms_)
      if (ring_->degree(mono) != deg) return false;
    return true;
  }

  S integrate() const {
    S total(0);
    if (!ring_) return total;
    for (const auto& [mono, c] : terms_) {
      auto it = ring_->integrals.find(mono);
      if (it != ring_->integrals.end()) total += c * detail::from_rational<S>(it->second);
    }
    return total;
  }

  Graded& operator+=(const Graded& o) {
    adopt(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  Graded& operator-=(const Graded& o) {
    adopt(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }
  Graded& operator*=(const S& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
  }

  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
  friend Graded operator-(Graded a) {
    for (auto& [mono, c] : a.terms_) c = -c;
    return a;
  }
  friend Graded operator*(Graded a, const S& s) { return a *= s; }
  friend Graded operator*(const S& s, Graded a) { return a *= s; }

  friend Graded operator*(const Graded& a, const Graded& b) {
    detail::require_same(a.ring_, b.ring_);
    const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
    Graded out(ring);
    if (a.is_zero() || b.is_zero()) return out;
    Monomial prod(ring->generators.size());
    for (const auto& [ma, ca] : a.terms_) {
      int da = ring->degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (da + ring->degree(mb) > ring->truncation) continue;
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
        out.add_term(prod, ca * cb);
      }
    }
    return out;
  }
  Graded& operator*=(const Graded& o) { return *this = *this * o; }

  friend bool operator==(const Graded& a, const Graded& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    detail::require_same(a.ring_, b.ring_);
    return a.terms_ == b.terms_;
  }

 private:
  void adopt(const Graded& o) {
    if (!ring_) {
      ring_ = o.ring_;
    } else if (o.ring_) {
      detail::require_same(ring_, o.ring_);
    }
  }

  RingPtr ring_;
  std::map<Monomial, S> terms_;
};

using GradedElement = Graded<Rational>;
using ComplexGraded = Graded<Complex>;

ComplexGraded to_complex(const GradedElement& a);

// Largest n with a^n possibly nonzero for nilpotent a of a ring (truncation / 2).
int nilpotency_bound(const RingPtr& ring);

// Sum_n coeffs[n] a^n for a with vanishing scalar part; coeffs must reach nilpotency_bound.
template <class S>
Graded<S> apply_series(const std::vector<S>& coeffs, const Graded<S>& a) {
  if (!detail::is_zero(a.scalar_part()))
    throw DomainError("series argument must have zero scalar part");
  const RingPtr& ring = a.ring();
  Graded<S> out(ring);
  Graded<S> power(ring, S(1));
  for (std::size_t n = 0; n < coeffs.size() && !power.is_zero(); ++n) {
    out += power * coeffs[n];
    power = power * a;
  }
  if (!power.is_zero()) throw DomainError("series too short for nilpotent argument");
  return out;
}

GradedElement exp_nilpotent(const GradedElement& a);
ComplexGraded exp_nilpotent(const ComplexGraded& a);

// Bernoulli numbers with B_1 = +1/2, cached.
Rational bernoulli_plus(int n);
// Taylor coefficients of td(y) = y / (1 - e^{-y}) up to y^order.
std::vector<Rational> todd_coefficients(int order);
// prod_i r_i / (1 - e^{-r_i}); every root must be pure degree 2 (or zero).
GradedElement todd_from_roots(const RingPtr& ring, const std::vector<GradedElement>& roots);

// Places a's monomials at generator offset `offset` of `target`.
GradedElement embed(const GradedElement& a, const RingPtr& target, std::size_t offset);

}  // namespace equiloc
