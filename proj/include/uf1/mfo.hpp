// Satisfiability for monadic first-order logic without equality.
//
// Quantifiers are eliminated into witness atoms E[c], read "some element
// satisfies c", where c is a quantifier-free condition on one element that
// may mention other witness atoms. A propositional search over the witness
// atoms is then checked for realizability one witness at a time.
#pragma once

#include <optional>

#include "uf1/budget.hpp"
#include "uf1/structures.hpp"

namespace uf1 {

struct LiteralCube {
  std::map<std::string, bool> lits;  // predicate -> sign
  std::string str() const;           // E_{P+,Q-}
};

struct Skeleton {
  struct Node {
    enum Op : uint8_t { True, False, Pred, Atom, Not, And, Or, Iff } op;
    int a = -1, b = -1;
    int pred = -1;  // Pred: predicate index
    int var = -1;   // Pred: variable index (0 is the witness variable); Atom: atom index
  };
  std::vector<Node> nodes;  // hash-consed condition DAG
  std::vector<std::string> predicates;
  std::vector<std::string> variables;
  struct WitnessAtom {
    int body;                          // over variable 0 and earlier atoms, negation normal form
    std::optional<LiteralCube> cube;   // when the body is a conjunction of literals
  };
  std::vector<WitnessAtom> atoms;
  int root = -1;  // closed: mentions atoms only
  std::optional<std::string> free_var;

  std::string atom_name(int i) const;
  std::string print(int node) const;
  std::string str() const { return print(root); }
};

// f must be unary-only with at most one free variable, read existentially.
Skeleton miniscope(const Formula& f, const Budgets& budgets = Budgets());

// Truth of each witness atom in s, in atom order.
std::vector<char> induced_assignment(const Skeleton& sk, const Structure& s);
bool skeleton_value(const Skeleton& sk, const std::vector<char>& atoms);

struct MfoResult {
  bool sat = false;
  Structure model;                // one element per realised witness type
  std::optional<int> witness;     // element for the free variable, if any
  std::vector<std::string> core;  // UNSAT: the learnt realizability lemmas
  size_t skeleton_atoms = 0;
  size_t rounds = 0;
};

// SAT answers are replayed with model_check before they are returned.
MfoResult decide_mfo(const Formula& f, const Budgets& budgets = Budgets());

// An element at which f (free variable x) holds in r.model.
int extract_witness(const MfoResult& r, const Formula& f);

}  // namespace uf1
