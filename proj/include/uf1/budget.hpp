// Resource caps for the exponential stages of the decision chain.
#pragma once

#include <cstdint>
#include <string>

#include "uf1/formula.hpp"

namespace uf1 {

struct Budgets {
  uint64_t formula_nodes = 1000000;  // DNF/diagram expansion and translation output
  uint64_t diagrams = 4096;          // |Δ_k| summed over arities
  uint64_t torus = 200;              // |T(N,M)|
  uint64_t skeleton_atoms = 100000;  // distinct witness atoms after miniscoping
  uint64_t oracle_models = uint64_t{1} << 24;
  uint64_t model_elements = 100000;  // |M|·|T| for torus models

  // desk (default), ci or unbounded.
  static Budgets profile(const std::string& name);
  // UF1_BUDGET_PROFILE, falling back to desk.
  static Budgets from_env();
  // Sets one budget by its flag name (formula-nodes, diagrams, ...).
  void set(const std::string& name, uint64_t value);
  static const char* const kNames[6];
};

struct BudgetExceeded : Error {
  BudgetExceeded(std::string budget, std::string stage, uint64_t limit);
  std::string budget, stage;
  uint64_t limit;
};

// Counts work against one cap; throws BudgetExceeded when it is passed.
class Meter {
 public:
  Meter(std::string budget, std::string stage, uint64_t limit)
      : budget_(std::move(budget)), stage_(std::move(stage)), limit_(limit) {}
  void add(uint64_t n = 1) {
    used_ += n;
    if (used_ > limit_) throw BudgetExceeded(budget_, stage_, limit_);
  }
  uint64_t used() const { return used_; }

 private:
  std::string budget_, stage_;
  uint64_t limit_;
  uint64_t used_ = 0;
};

}  // namespace uf1
