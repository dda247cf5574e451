// The whole decision chain UF1 -> DUF1 -> MUF1 -> monadic FO -> decision.
#pragma once

#include <functional>

#include "uf1/mfo.hpp"
#include "uf1/monadizer.hpp"

namespace uf1 {

struct DecideResult {
  bool sat = false;
  // With reconstruction: a model of the input and an element for its free
  // variable (0 for sentences), both replayed before returning.
  std::optional<Structure> model;
  std::optional<int> witness;
  MfoResult mfo;
  // Sizes along the way, for reporting.
  size_t duf1_nodes = 0, muf1_sub = 0, star_nodes = 0, torus = 0;
};

// Throws FragmentError outside UF1 and BudgetExceeded when a cap is hit.
// `progress` (optional) is told the name of each stage as it starts.
DecideResult decide_uf1(const Formula& f, const Budgets& budgets = Budgets(), bool reconstruct = false,
                        const std::function<void(const std::string&)>& progress = {});

}  // namespace uf1
