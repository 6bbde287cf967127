#include "equiloc/ring.hpp"

#include <mutex>
#include <set>

namespace equiloc {

int RingSpec::degree(const Monomial& mono) const {
  int d = 0;
  for (std::size_t i = 0; i < mono.size(); ++i) d += mono[i] * generators[i].degree;
  return d;
}

int RingSpec::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return static_cast<int>(i);
  return -1;
}

void RingSpec::check() const {
  std::set<std::string> names;
  for (const auto& g : generators) {
    if (g.degree < 2 || g.degree % 2 != 0)
      throw InputError("generator '" + g.name + "' must have even degree >= 2");
    if (!names.insert(g.name).second) throw InputError("duplicate generator '" + g.name + "'");
  }
  if (truncation < 0 || truncation % 2 != 0)
    throw InputError("truncation degree must be even and nonnegative");
  for (const auto& [mono, value] : integrals) {
    if (mono.size() != generators.size()) throw InputError("integration key has wrong arity");
    for (int e : mono)
      if (e < 0) throw InputError("negative exponent in integration key");
    if (degree(mono) != truncation)
      throw InputError("integration key is not of top degree");
  }
}

bool RingSpec::operator==(const RingSpec& o) const {
  if (truncation != o.truncation || generators.size() != o.generators.size()) return false;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name != o.generators[i].name || generators[i].degree != o.generators[i].degree)
      return false;
  return integrals == o.integrals;
}

RingPtr make_ring(std::vector<Generator> generators, int truncation,
                  std::map<Monomial, Rational> integrals) {
  auto r = std::make_shared<RingSpec>();
  r->generators = std::move(generators);
  r->truncation = truncation;
  r->integrals = std::move(integrals);
  r->check();
  return r;
}

RingPtr point_ring() {
  static const RingPtr pt = make_ring({}, 0, {{Monomial{}, Rational(1)}});
  return pt;
}

RingPtr projective_ring(const std::string& generator, int n) {
  if (n == 0) return point_ring();
  return make_ring({{generator, 2}}, 2 * n, {{Monomial{n}, Rational(1)}});
}

RingPtr tensor(const RingPtr& a, const RingPtr& b) {
  std::vector<Generator> gens = a->generators;
  std::set<std::string> used;
  for (const auto& g : gens) used.insert(g.name);
  for (const auto& g : b->generators) {
    std::string name = g.name;
    for (int suffix = 2; used.count(name); ++suffix) name = g.name + "_" + std::to_string(suffix);
    used.insert(name);
    gens.push_back({name, g.degree});
  }
  std::map<Monomial, Rational> table;
  for (const auto& [ma, va] : a->integrals)
    for (const auto& [mb, vb] : b->integrals) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      table[m] = va * vb;
    }
  return make_ring(std::move(gens), a->truncation + b->truncation, std::move(table));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace detail {
void require_same(const RingPtr& a, const RingPtr& b) {
  if (!a || !b) return;
  if (!same_ring(a, b)) throw RingMismatch("operands live in different rings");
}
}  // namespace detail

ComplexGraded to_complex(const GradedElement& a) {
  ComplexGraded out(a.ring());
  for (const auto& [mono, c] : a.terms()) out.add_term(mono, Complex(c.get_d(), 0.0));
  return out;
}

int nilpotency_bound(const RingPtr& ring) { return ring->truncation / 2; }

namespace {
template <class S>
Graded<S> exp_impl(const Graded<S>& a) {
  int n = nilpotency_bound(a.ring());
  std::vector<S> coeffs;
  for (int k = 0; k <= n; ++k) coeffs.push_back(detail::from_rational<S>(1 / factorial(k)));
  if (!detail::is_zero(a.scalar_part())) throw DomainError("exp_nilpotent: nonzero scalar part");
  return apply_series(coeffs, a);
}
}  // namespace

GradedElement exp_nilpotent(const GradedElement& a) { return exp_impl(a); }
ComplexGraded exp_nilpotent(const ComplexGraded& a) { return exp_impl(a); }

Rational bernoulli_plus(int n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  // Recurrence sum_{k<=n} C(n+1,k) B_k = 0 in the B_1 = -1/2 convention.
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    Rational s = 0;
    for (int k = 0; k < m; ++k) {
      Rational bk = (k == 1) ? Rational(-1, 2) : cache[k];
      s += Rational(binomial(m + 1, k)) * bk;
    }
    Rational bm = -s / (m + 1);
    bm.canonicalize();
    if (m == 1) bm = -bm;
    cache.push_back(bm);
  }
  return cache[n];
}

std::vector<Rational> todd_coefficients(int order) {
  std::vector<Rational> c;
  for (int n = 0; n <= order; ++n) {
    Rational t = bernoulli_plus(n) / factorial(n);
    t.canonicalize();
    c.push_back(t);
  }
  return c;
}

GradedElement todd_from_roots(const RingPtr& ring, const std::vector<GradedElement>& roots) {
  GradedElement out(ring, Rational(1));
  auto coeffs = todd_coefficients(nilpotency_bound(ring));
  for (const auto& r : roots) {
    if (!r.is_pure_degree(2)) throw DomainError("Chern root must be of pure degree 2");
    detail::require_same(ring, r.ring());
    if (r.is_zero()) continue;
    out = out * apply_series(coeffs, r);
  }
  return out;
}

GradedElement embed(const GradedElement& a, const RingPtr& target, std::size_t offset) {
  GradedElement out(target);
  for (const auto& [mono, c] : a.terms()) {
    Monomial m = target->unit();
    for (std::size_t i = 0; i < mono.size(); ++i) m.at(offset + i) = mono[i];
    out.add_term(m, c);
  }
  return out;
}

}  // namespace equiloc
