#pragma once

#include <functional>
#include <string>
#include <vector>

#include "equiloc/model.hpp"
#include "equiloc/oracle.hpp"

namespace equiloc {

struct Builtin {
  std::string name;
  std::string description;
  std::function<ManifoldPresentation()> build;
  std::function<WeightMultiset(long m)> oracle;
};

const std::vector<Builtin>& builtins();
const Builtin& find_builtin(const std::string& name);  // throws InputError

}  // namespace equiloc
