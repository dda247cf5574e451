// Random formula generators shared by the property tests.
#pragma once

#include <random>

#include "uf1/formula.hpp"

namespace uf1::testgen {

struct Spec {
  std::vector<RelationSymbol> symbols;
  std::vector<std::string> vars;
  int depth = 3;
  bool quantifiers = true;
};

inline Formula random_formula(std::mt19937_64& rng, const Spec& s, int depth) {
  auto pick = [&](size_t n) { return static_cast<size_t>(rng() % n); };
  if (depth == 0 || pick(5) == 0) {
    if (pick(12) == 0) return pick(2) ? top() : bot();
    const auto& sym = s.symbols[pick(s.symbols.size())];
    std::vector<std::string> args;
    for (int i = 0; i < sym.arity; ++i) args.push_back(s.vars[pick(s.vars.size())]);
    return atom(sym.name, args);
  }
  switch (pick(s.quantifiers ? 8 : 6)) {
    case 0: return neg(random_formula(rng, s, depth - 1));
    case 1: return conj(random_formula(rng, s, depth - 1), random_formula(rng, s, depth - 1));
    case 2: return disj(random_formula(rng, s, depth - 1), random_formula(rng, s, depth - 1));
    case 3: return implies(random_formula(rng, s, depth - 1), random_formula(rng, s, depth - 1));
    case 4: return iff(random_formula(rng, s, depth - 1), random_formula(rng, s, depth - 1));
    case 5: return neg(random_formula(rng, s, depth - 1));
    case 6: return exists(s.vars[pick(s.vars.size())], random_formula(rng, s, depth - 1));
    default: return forall(s.vars[pick(s.vars.size())], random_formula(rng, s, depth - 1));
  }
}

inline Formula random_formula(std::mt19937_64& rng, const Spec& s) {
  return random_formula(rng, s, s.depth);
}

}  // namespace uf1::testgen
