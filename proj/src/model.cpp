#include "equiloc/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace equiloc {

int FixedComponent::codim_half() const {
  int r = 0;
  for (const auto& b : blocks) r += b.rank();
  return r;
}

std::vector<int> FixedComponent::weights() const {
  std::vector<int> w;
  for (const auto& b : blocks)
    for (int i = 0; i < b.rank(); ++i) w.push_back(b.weight);
  return w;
}

std::vector<Diagnostic> validate(const ManifoldPresentation& p) {
  std::vector<Diagnostic> out;
  auto add = [&](std::string code, std::string where, std::string msg) {
    out.push_back({std::move(code), std::move(where), std::move(msg)});
  };
  if (p.dim <= 0 && !(p.dim == 0 && p.components.size() == 1))
    add("DimensionInvalid", p.name, "dim_M must be a positive even integer");
  if (p.dim % 2 != 0) add("DimensionInvalid", p.name, "dim_M must be even");
  if (p.components.empty()) add("NoComponents", p.name, "at least one fixed component is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < p.components.size(); ++i) {
    const auto& F = p.components[i];
    std::string where = "components[" + std::to_string(i) + "] '" + F.name + "'";
    if (!names.insert(F.name).second) add("DuplicateName", where, "component names must be unique");
    if (!F.ring) {
      add("RingInvalid", where, "missing ring");
      continue;
    }
    try {
      F.ring->check();
    } catch (const InputError& e) {
      add("RingInvalid", where, e.what());
    }
    if (F.dim < 0 || F.dim % 2 != 0) add("DimensionInvalid", where, "dim_F must be even and >= 0");
    if (F.dim != F.ring->truncation)
      add("TruncationMismatch", where, "dim_F must equal the ring truncation degree");
    if (F.dim + 2 * F.codim_half() != p.dim)
      add("DimensionMismatch", where,
          "dim_F + 2*(total rank) = " + std::to_string(F.dim + 2 * F.codim_half()) +
              " but dim_M = " + std::to_string(p.dim));
    auto in_ring = [&](const GradedElement& g) { return g.is_zero() || same_ring(g.ring(), F.ring); };
    if (!in_ring(F.todd) || !in_ring(F.omega)) {
      add("RingMismatch", where, "todd/omega not in the component ring");
    } else {
      if (F.todd.scalar_part() != 1) add("ToddNormalization", where, "Todd class must start with 1");
      if (!F.omega.is_pure_degree(2)) add("OmegaDegree", where, "omega must be of pure degree 2");
    }
    for (std::size_t b = 0; b < F.blocks.size(); ++b) {
      const auto& blk = F.blocks[b];
      std::string bw = where + " blocks[" + std::to_string(b) + "]";
      if (blk.weight == 0) add("WeightZero", bw, "normal weights must be nonzero");
      if (blk.rank() < 1) add("RankZero", bw, "block needs at least one Chern root");
      for (const auto& r : blk.roots) {
        if (!in_ring(r)) {
          add("RingMismatch", bw, "Chern root not in the component ring");
        } else if (!r.is_pure_degree(2)) {
          add("RootDegree", bw, "Chern roots must be of pure degree 2");
        }
      }
    }
  }
  if (p.quotient) {
    const auto& q = *p.quotient;
    if (!q.ring) {
      add("RingInvalid", "quotient", "missing ring");
    } else {
      try {
        q.ring->check();
      } catch (const InputError& e) {
        add("RingInvalid", "quotient", e.what());
      }
      if (!q.omega0.is_zero() && !same_ring(q.omega0.ring(), q.ring))
        add("RingMismatch", "quotient", "omega0 not in the quotient ring");
      else if (!q.omega0.is_pure_degree(2))
        add("OmegaDegree", "quotient", "omega0 must be of pure degree 2");
      if (!q.kappa_todd.is_zero() && !same_ring(q.kappa_todd.ring(), q.ring))
        add("RingMismatch", "quotient", "kappa_todd not in the quotient ring");
    }
  }
  return out;
}

void require_valid(const ManifoldPresentation& p) {
  auto d = validate(p);
  if (!d.empty()) throw ValidationError(std::move(d));
}

namespace {

// Sound sufficient condition for freeness on the regular part of J^{-1}(0): either 0 is an
// extreme moment value (the regular part is empty), or every weight is +-1 (then no point
// outside the fixed set has a finite stabilizer).
bool free_by_structure(const ManifoldPresentation& p) {
  long lo = 0, hi = 0;
  bool first = true, unit = true;
  for (const auto& F : p.components) {
    long j = p.moment(F);
    lo = first ? j : std::min(lo, j);
    hi = first ? j : std::max(hi, j);
    first = false;
    for (const auto& b : F.blocks)
      if (std::abs(b.weight) != 1) unit = false;
  }
  return unit || lo >= 0 || hi <= 0;
}

}  // namespace

ManifoldPresentation point_manifold() {
  ManifoldPresentation p;
  p.name = "point";
  p.dim = 0;
  p.free_on_regular = true;
  FixedComponent F;
  F.name = "pt";
  F.ring = point_ring();
  F.todd = GradedElement(F.ring, Rational(1));
  F.omega = GradedElement(F.ring);
  p.components.push_back(F);
  return p;
}

ManifoldPresentation cpn_linear(const std::vector<int>& weights, int d) {
  if (weights.size() < 2) throw DomainError("cpn_linear needs n >= 1 (at least two weights)");
  if (d < 1) throw DomainError("cpn_linear needs d >= 1");
  std::map<int, int> mult;
  for (int w : weights) mult[w] += 1;
  const int wmin = mult.begin()->first;

  ManifoldPresentation p;
  p.dim = 2 * (static_cast<int>(weights.size()) - 1);
  p.name = "cpn_linear";
  for (const auto& [w, r] : mult) {
    FixedComponent F;
    F.name = "w=" + std::to_string(w);
    F.dim = 2 * (r - 1);
    F.moment = static_cast<long>(d) * (w - wmin);
    F.ring = projective_ring("h", r - 1);
    GradedElement h = r > 1 ? GradedElement::generator(F.ring, 0) : GradedElement(F.ring);
    // T P^{r-1} + C = O(1)^r
    F.todd = todd_from_roots(F.ring, std::vector<GradedElement>(r, h));
    F.omega = h * Rational(d);
    for (const auto& [w2, r2] : mult) {
      if (w2 == w) continue;
      // normal block Hom(O(-1), V_{w2}) = O(1)^{r2}; roots enter the fixed-point factor as -h
      NormalBlock b;
      b.weight = w2 - w;
      b.roots.assign(r2, -h);
      F.blocks.push_back(b);
    }
    p.components.push_back(F);
  }
  p.free_on_regular = free_by_structure(p);
  return p;
}

ManifoldPresentation cp1_rotation(int k) {
  if (k == 0) throw DomainError("cp1_rotation needs a nonzero weight");
  ManifoldPresentation p = cpn_linear({0, k}, 1);
  p.name = "cp1_rotation(" + std::to_string(k) + ")";
  p.moment_shift = std::min(0, k);
  p.free_on_regular = free_by_structure(p);
  return p;
}

ManifoldPresentation product(const ManifoldPresentation& p, const ManifoldPresentation& q) {
  ManifoldPresentation out;
  out.name = p.name + "*" + q.name;
  out.dim = p.dim + q.dim;
  out.moment_shift = p.moment_shift + q.moment_shift;
  for (const auto& F : p.components) {
    for (const auto& G : q.components) {
      FixedComponent H;
      H.name = "(" + F.name + "," + G.name + ")";
      H.dim = F.dim + G.dim;
      H.moment = F.moment + G.moment;
      H.ring = tensor(F.ring, G.ring);
      const std::size_t off = F.ring->generators.size();
      H.todd = embed(F.todd, H.ring, 0) * embed(G.todd, H.ring, off);
      H.omega = embed(F.omega, H.ring, 0) + embed(G.omega, H.ring, off);
      std::map<int, std::vector<GradedElement>> merged;
      for (const auto& b : F.blocks)
        for (const auto& r : b.roots) merged[b.weight].push_back(embed(r, H.ring, 0));
      for (const auto& b : G.blocks)
        for (const auto& r : b.roots) merged[b.weight].push_back(embed(r, H.ring, off));
      for (auto& [w, roots] : merged) H.blocks.push_back({w, std::move(roots)});
      out.components.push_back(std::move(H));
    }
  }
  out.free_on_regular = free_by_structure(out);
  return out;
}

ManifoldPresentation with_moment_shift(ManifoldPresentation p, long shift) {
  p.moment_shift += shift;
  p.free_on_regular = free_by_structure(p);
  return p;
}

ManifoldPresentation bundle_power(ManifoldPresentation p, int k) {
  if (k < 1) throw DomainError("bundle power must be positive");
  for (auto& F : p.components) {
    F.moment *= k;
    F.omega *= Rational(k);
  }
  p.moment_shift *= k;
  if (p.quotient) p.quotient->omega0 *= Rational(k);
  return p;
}

}  // namespace equiloc
