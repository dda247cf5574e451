#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace uf1 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col);
  int line, col;
};

struct ArityError : Error {
  ArityError(const std::string& symbol, int first, int second);
  std::string symbol;
  int first, second;
};

struct RelationSymbol {
  std::string name;
  int arity = 1;
  auto operator<=>(const RelationSymbol&) const = default;
};

// Name -> arity. A name is bound to exactly one arity.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<RelationSymbol> syms);

  // Throws ArityError if name is already present with another arity.
  void add(const std::string& name, int arity);
  void add(const RelationSymbol& s) { add(s.name, s.arity); }
  void merge(const Vocabulary& other);

  bool contains(const std::string& name) const { return arity_.count(name) != 0; }
  int arity(const std::string& name) const;
  size_t size() const { return arity_.size(); }
  bool empty() const { return arity_.empty(); }
  int max_arity() const;
  // Symbols sorted by name.
  std::vector<RelationSymbol> symbols() const;
  // Only symbols with arity >= k.
  Vocabulary at_least(int k) const;
  std::string str() const;

  bool operator==(const Vocabulary& o) const { return arity_ == o.arity_; }

 private:
  std::map<std::string, int> arity_;
};

enum class Kind { Atom, True, False, Not, And, Or, Implies, Iff, Exists, Forall };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;               // relation symbol (Atom) or bound variable (quantifiers)
  std::vector<std::string> args;  // Atom arguments
  Formula a, b;                   // operands
  size_t hash = 0;
};

// Constructors. These never simplify.
Formula atom(const std::string& symbol, std::vector<std::string> args);
Formula top();
Formula bot();
Formula neg(Formula f);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula implies(Formula l, Formula r);
Formula iff(Formula l, Formula r);
Formula exists(const std::string& v, Formula f);
Formula forall(const std::string& v, Formula f);
Formula exists(const std::vector<std::string>& vs, Formula f);
Formula forall(const std::vector<std::string>& vs, Formula f);
// Balanced conjunction/disjunction; empty list gives true/false.
Formula conj(const std::vector<Formula>& fs);
Formula disj(const std::vector<Formula>& fs);

bool equal(const Formula& x, const Formula& y);
struct FormulaHash {
  size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& x, const Formula& y) const { return equal(x, y); }
};

bool is_quantifier(const Formula& f);
bool is_boolean(const Formula& f);  // Not/And/Or/Implies/Iff

// Parses one formula; `vocab`, when given, receives inferred arities and is
// used to detect conflicts across several formulas.
Formula parse(const std::string& text, Vocabulary* vocab = nullptr);
std::string print(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> variables(const Formula& f);  // free and bound
Formula substitute(const Formula& f, const std::map<std::string, std::string>& m);
std::vector<Formula> subformulas(const Formula& f);
Vocabulary vocabulary_of(const Formula& f);
// Tree size (shared subterms are counted once per occurrence).
size_t tree_size(const Formula& f);
// Number of distinct variables among an atom's arguments.
int atom_arity_class(const Formula& a);
std::set<std::string> atom_vars(const Formula& a);

// Fresh variable not in `used`, derived from `base`.
std::string fresh_var(const std::string& base, const std::set<std::string>& used);

}  // namespace uf1
