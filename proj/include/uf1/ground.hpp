// Propositional grounding of first-order formulas over a fixed finite domain.
#pragma once

#include <map>
#include <unordered_map>

#include "uf1/formula.hpp"
#include "uf1/sat.hpp"
#include "uf1/structures.hpp"

namespace uf1 {

class Grounder {
 public:
  Grounder(sat::Solver& s, const Vocabulary& v, int n);

  int size() const { return n_; }
  sat::Solver& solver() { return s_; }
  sat::Lit true_lit() const { return true_; }
  sat::Lit false_lit() const { return ~true_; }

  sat::Lit atom(const std::string& sym, const Tuple& t);
  sat::Lit mk_and(std::vector<sat::Lit> ls);
  sat::Lit mk_or(std::vector<sat::Lit> ls);
  sat::Lit mk_iff(sat::Lit a, sat::Lit b);

  // Truth of f under env (which must bind every free variable).
  sat::Lit encode(const Formula& f, const Assignment& env);

  // The structure described by the solver's current model.
  Structure decode() const;

 private:
  sat::Solver& s_;
  Vocabulary vocab_;
  int n_;
  sat::Lit true_;
  std::map<std::string, std::pair<int, int>> base_;  // symbol -> (first var, arity)
  std::map<std::vector<int>, sat::Lit> and_cache_;
  std::unordered_map<const Node*, std::vector<std::string>> fv_cache_;
  std::map<std::pair<const Node*, std::vector<int>>, sat::Lit> memo_;
};

}  // namespace uf1
