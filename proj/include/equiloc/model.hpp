#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equiloc/ring.hpp"

namespace equiloc {

// Isotypic block of the normal bundle. Roots a are the exponents in the fixed-point factor
// prod (1 - z^k e^{a})^{-1}; for a block that is O(1) (x) C^r on CP^n the roots are -h.
struct NormalBlock {
  int weight = 0;
  std::vector<GradedElement> roots;
  int rank() const { return static_cast<int>(roots.size()); }
};

struct FixedComponent {
  std::string name;
  int dim = 0;
  long moment = 0;
  RingPtr ring;
  GradedElement todd;
  GradedElement omega;
  std::vector<NormalBlock> blocks;

  int codim_half() const;
  std::vector<int> weights() const;  // one entry per root
};

struct QuotientData {
  RingPtr ring;
  GradedElement omega0;
  GradedElement kappa_todd;
};

struct ManifoldPresentation {
  std::string name;
  int dim = 0;
  long moment_shift = 0;
  bool free_on_regular = false;
  std::vector<FixedComponent> components;
  std::optional<QuotientData> quotient;

  long moment(const FixedComponent& F) const { return F.moment + moment_shift; }
  long moment(std::size_t i) const { return moment(components.at(i)); }
};

std::vector<Diagnostic> validate(const ManifoldPresentation& p);
void require_valid(const ManifoldPresentation& p);  // throws ValidationError

ManifoldPresentation point_manifold();
// CP^n with linear weights and L = O(d); the minimum moment is normalized to 0.
ManifoldPresentation cpn_linear(const std::vector<int>& weights, int d);
// CP^1 rotated with weight k at [1:0]; that point sits at J = 0.
ManifoldPresentation cp1_rotation(int k);
ManifoldPresentation product(const ManifoldPresentation& p, const ManifoldPresentation& q);
ManifoldPresentation with_moment_shift(ManifoldPresentation p, long shift);
// L -> L^k: omega and all moments scale by k.
ManifoldPresentation bundle_power(ManifoldPresentation p, int k);

}  // namespace equiloc
