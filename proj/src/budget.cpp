#include "uf1/budget.hpp"

#include <cstdlib>
#include <limits>

namespace uf1 {

const char* const Budgets::kNames[6] = {"formula-nodes", "diagrams",      "torus",
                                        "skeleton-atoms", "oracle-models", "model-elements"};

Budgets Budgets::profile(const std::string& name) {
  Budgets b;
  if (name == "desk" || name.empty()) return b;
  if (name == "ci") {
    b.formula_nodes = 200000;
    b.torus = 100;
    b.skeleton_atoms = 20000;
    b.oracle_models = uint64_t{1} << 20;
    b.model_elements = 20000;
    return b;
  }
  if (name == "unbounded") {
    uint64_t inf = std::numeric_limits<uint64_t>::max();
    b.formula_nodes = b.diagrams = b.torus = b.skeleton_atoms = b.oracle_models = b.model_elements = inf;
    return b;
  }
  throw Error("unknown budget profile '" + name + "' (expected desk, ci or unbounded)");
}

Budgets Budgets::from_env() {
  const char* p = std::getenv("UF1_BUDGET_PROFILE");
  return profile(p ? p : "desk");
}

void Budgets::set(const std::string& name, uint64_t value) {
  if (value == 0) throw Error("budget " + name + " must be positive");
  if (name == "formula-nodes") formula_nodes = value;
  else if (name == "diagrams") diagrams = value;
  else if (name == "torus") torus = value;
  else if (name == "skeleton-atoms") skeleton_atoms = value;
  else if (name == "oracle-models") oracle_models = value;
  else if (name == "model-elements") model_elements = value;
  else throw Error("unknown budget '" + name + "'");
}

BudgetExceeded::BudgetExceeded(std::string b, std::string s, uint64_t l)
    : Error("budget exceeded: " + b + " (limit " + std::to_string(l) + ") in " + s),
      budget(std::move(b)),
      stage(std::move(s)),
      limit(l) {}

}  // namespace uf1
