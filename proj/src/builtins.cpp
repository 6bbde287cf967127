#include "equiloc/builtins.hpp"

namespace equiloc {

namespace {

ManifoldPresentation named(ManifoldPresentation p, const std::string& name) {
  p.name = name;
  return p;
}

WeightMultiset rotation_oracle(int k, long m) {
  return shift(cpn_weights({0, k}, 1, m), m * std::min(0, k));
}

QuotientData cp2_quotient() {
  QuotientData q;
  q.ring = projective_ring("h", 2);
  GradedElement h = GradedElement::generator(q.ring, 0);
  q.omega0 = h;
  q.kappa_todd = todd_from_roots(q.ring, {h, h, h});
  return q;
}

QuotientData cp1_quotient() {
  QuotientData q;
  q.ring = projective_ring("h", 1);
  GradedElement h = GradedElement::generator(q.ring, 0);
  q.omega0 = h;
  q.kappa_todd = todd_from_roots(q.ring, {h, h});
  return q;
}

ManifoldPresentation dim6(int a, int b, int c, const std::string& name) {
  auto p = product(product(cp1_rotation(a), cp1_rotation(b)), cp1_rotation(c));
  p.quotient = cp2_quotient();
  return named(p, name);
}

std::vector<Builtin> make() {
  std::vector<Builtin> v;
  v.push_back({"cp1", "CP^1 with weights (0,1), L = O(1)",
               [] { return named(cpn_linear({0, 1}, 1), "cp1"); },
               [](long m) { return cpn_weights({0, 1}, 1, m); }});
  v.push_back({"cp001", "CP^2 with weights (0,0,1): a CP^1 minimum and an isolated maximum",
               [] { return named(cpn_linear({0, 0, 1}, 1), "cp001"); },
               [](long m) { return cpn_weights({0, 0, 1}, 1, m); }});
  v.push_back({"cp012", "CP^2 with weights (0,1,2)",
               [] { return named(cpn_linear({0, 1, 2}, 1), "cp012"); },
               [](long m) { return cpn_weights({0, 1, 2}, 1, m); }});
  v.push_back({"prod11", "CP^1 x CP^1 with weights (+1,-1): two indefinite points at J = 0",
               [] { return named(product(cp1_rotation(1), cp1_rotation(-1)), "prod11"); },
               [](long m) { return convolve(rotation_oracle(1, m), rotation_oracle(-1, m)); }});
  v.push_back({"dgmw", "CP^3 with weights (0,0,1,1): J^{-1}(0) is a CP^1 of fixed points",
               [] { return named(cpn_linear({0, 0, 1, 1}, 1), "dgmw"); },
               [](long m) { return cpn_weights({0, 0, 1, 1}, 1, m); }});
  v.push_back({"dgmw_mixed", "dgmw x CP^1(+2) x CP^1(+3): components with mixed weights +2/-3",
               [] {
                 auto p = product(product(cpn_linear({0, 0, 1, 1}, 1), cp1_rotation(2)), cp1_rotation(3));
                 return named(p, "dgmw_mixed");
               },
               [](long m) {
                 return convolve(convolve(cpn_weights({0, 0, 1, 1}, 1, m), rotation_oracle(2, m)),
                                 rotation_oracle(3, m));
               }});
  v.push_back({"dgmw_max", "CP^1(-2) x CP^1(-3): J = 0 is the maximum, weights {-2,-3}",
               [] { return named(product(cp1_rotation(-2), cp1_rotation(-3)), "dgmw_max"); },
               [](long m) { return convolve(rotation_oracle(-2, m), rotation_oracle(-3, m)); }});
  v.push_back({"dim6", "(CP^1)^3 with weights (+1,+1,-1); isolated indefinite points, quotient CP^2",
               [] { return dim6(1, 1, -1, "dim6"); },
               [](long m) {
                 return convolve(convolve(rotation_oracle(1, m), rotation_oracle(1, m)), rotation_oracle(-1, m));
               }});
  v.push_back({"dim6b", "(CP^1)^3 with weights (+1,-1,-1); quotient CP^2",
               [] { return dim6(1, -1, -1, "dim6b"); },
               [](long m) {
                 return convolve(convolve(rotation_oracle(1, m), rotation_oracle(-1, m)), rotation_oracle(-1, m));
               }});
  v.push_back({"reg011", "CP^2 with weights (0,1,1), L = O(2), level shifted by -1: 0 is a regular value",
               [] {
                 auto p = with_moment_shift(cpn_linear({0, 1, 1}, 2), -1);
                 p.quotient = cp1_quotient();
                 return named(p, "reg011");
               },
               [](long m) { return shift(cpn_weights({0, 1, 1}, 2, m), -m); }});
  return v;
}

}  // namespace

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> all = make();
  return all;
}

const Builtin& find_builtin(const std::string& name) {
  for (const auto& b : builtins())
    if (b.name == name) return b;
  throw InputError("unknown builtin '" + name + "'");
}

}  // namespace equiloc
