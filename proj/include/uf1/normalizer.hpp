// UF1 -> DUF1 -> MUF1, and the MUF1 evaluator over pointed structures.
#pragma once

#include <optional>
#include <unordered_map>

#include "uf1/budget.hpp"
#include "uf1/diagrams.hpp"
#include "uf1/fragments.hpp"
#include "uf1/ground.hpp"

namespace uf1 {

enum class MKind { Atom, True, False, Not, And, Or, Diamond, E };

struct MufNode;
using Muf = std::shared_ptr<const MufNode>;

struct MufNode {
  MKind kind;
  RelationSymbol sym;                          // Atom
  std::shared_ptr<const DiagramSpace> space;   // Diamond
  uint64_t bits = 0;                           // Diamond: canonical index
  std::vector<Muf> args;                       // operands
  size_t hash = 0;
  size_t size = 1;                             // tree size
};

Muf m_atom(const std::string& name, int arity);
Muf m_top();
Muf m_bot();
Muf m_not(Muf a);
Muf m_and(Muf a, Muf b);
Muf m_or(Muf a, Muf b);
Muf m_and(const std::vector<Muf>& ms);  // balanced; empty gives true
Muf m_or(const std::vector<Muf>& ms);   // balanced; empty gives false
Muf m_diamond(const Diagram& d, std::vector<Muf> args);
Muf m_E(Muf a);

Diagram muf_diagram(const Muf& m);  // standard diagram of a Diamond node
bool muf_equal(const Muf& a, const Muf& b);
struct MufHash {
  size_t operator()(const Muf& m) const { return m->hash; }
};
struct MufEq {
  bool operator()(const Muf& a, const Muf& b) const { return muf_equal(a, b); }
};

// `<D k#idx>(a1,...,ak)`, `<E>a`, symbols by name, true/false, !, &, |.
std::string print_muf(const Muf& m);
// Every symbol, including those of the diagrams.
Vocabulary muf_vocabulary(const Muf& m);
// All subterms, deduplicated, in post-order (operands before the term).
std::vector<Muf> muf1_sub(const Muf& m);

// Memoised evaluation of every subterm over one structure.
class MufEvaluator {
 public:
  explicit MufEvaluator(const Structure& s);
  bool operator()(int w, const Muf& m);
  // Extension of m: one flag per element.
  const std::vector<char>& extension(const Muf& m);
  // A tuple witnessing a Diamond at w, if any.
  std::optional<Tuple> witness(int w, const Muf& m);

 private:
  const Structure& s_;
  std::unordered_map<const MufNode*, std::vector<char>> memo_;
  std::vector<Muf> keep_;  // keeps memo keys alive
};

bool eval_muf1(const Structure& s, int w, const Muf& m);

// Truth of m at element w as a literal of the grounding.
sat::Lit ground_muf(Grounder& g, const Muf& m, int w,
                    std::map<std::pair<const MufNode*, int>, sat::Lit>& memo);

// UF1 -> DUF1. Diagrams range over the symbols of arity >= 2 in f.
Formula to_duf1(const Formula& f, const Budgets& budgets = Budgets());
// Generated by rules (i)-(iv); conjuncts next to a diagram have at most one
// free variable each. `vocab` fixes the diagram vocabulary (default: f's).
MembershipReport check_duf1(const Formula& f, const Vocabulary* vocab = nullptr);
// DUF1 -> MUF1 for formulas with at most one free variable.
Muf to_muf1(const Formula& f, std::optional<std::string> free_var = std::nullopt,
            const Vocabulary* vocab = nullptr);

}  // namespace uf1
