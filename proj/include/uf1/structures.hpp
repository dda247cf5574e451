#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uf1/formula.hpp"

namespace uf1 {

using Tuple = std::vector<int>;  // element indices

// Dense relation over a domain of size n: one bit per tuple in lexicographic order.
struct Relation {
  int arity = 1;
  int n = 0;
  std::vector<uint64_t> bits;

  size_t offset(const Tuple& t) const {
    size_t o = 0;
    for (int e : t) o = o * static_cast<size_t>(n) + static_cast<size_t>(e);
    return o;
  }
  size_t capacity() const;
  bool get(size_t o) const { return (bits[o >> 6] >> (o & 63)) & 1; }
  void put(size_t o, bool v) {
    if (v) bits[o >> 6] |= uint64_t{1} << (o & 63);
    else bits[o >> 6] &= ~(uint64_t{1} << (o & 63));
  }
};

class Structure {
 public:
  Structure() = default;
  explicit Structure(std::vector<std::string> domain);
  // Domain e1..en.
  static Structure of_size(int n);

  const std::vector<std::string>& domain() const { return domain_; }
  int size() const { return static_cast<int>(domain_.size()); }
  int element(const std::string& name) const;  // throws on unknown names

  // Adds an empty relation (no-op if present with the same arity).
  void add_symbol(const std::string& name, int arity);
  bool has_symbol(const std::string& name) const { return rels_.count(name) != 0; }
  Vocabulary vocabulary() const;
  const Relation& relation(const std::string& name) const;
  Relation& relation(const std::string& name);

  bool holds(const std::string& sym, const Tuple& t) const;
  void set(const std::string& sym, const Tuple& t, bool value = true);
  std::vector<Tuple> tuples(const std::string& sym) const;

 private:
  std::vector<std::string> domain_;
  std::map<std::string, int> index_;
  std::map<std::string, Relation> rels_;
};

using Assignment = std::map<std::string, int>;

// Formula compiled against one structure; may be evaluated repeatedly with
// different values for `free_vars`. The structure must outlive the evaluator,
// and its relation contents may change between calls.
class Evaluator {
 public:
  Evaluator(const Structure& s, const Formula& f, const std::vector<std::string>& free_vars);
  bool operator()(const std::vector<int>& values) const;

 private:
  enum class Op { Atom, True, False, Not, And, Or, Implies, Iff, Exists, Forall };
  struct Node {
    Op op;
    const Relation* rel = nullptr;
    std::vector<int> slots;  // atom arguments
    std::vector<int> kids;
    int slot = -1;  // bound variable
  };
  int compile(const Formula& f, std::map<std::string, std::vector<int>>& scope);
  bool eval(int id, std::vector<int>& env) const;

  const Structure* s_;
  std::vector<Node> nodes_;
  int root_ = 0;
  int nslots_ = 0;
  int nfree_ = 0;
};

// Throws on unbound free variables and on symbols the structure lacks.
bool model_check(const Structure& s, const Assignment& a, const Formula& f);

struct CapExceeded : Error {
  CapExceeded(const std::string& what, double count, double cap);
  double count, cap;
};

// Every structure over {e1..en}: ground atoms are ordered by symbol name and
// then lexicographically by tuple; bit i of the index is ground atom i.
class StructureSpace {
 public:
  StructureSpace(const Vocabulary& v, int n, uint64_t cap = uint64_t{1} << 24);
  uint64_t count() const { return count_; }
  int bits() const { return bits_; }
  Structure at(uint64_t index) const;
  // Overwrites the relations of `s` (which must come from at()).
  void load(uint64_t index, Structure& s) const;

 private:
  Vocabulary vocab_;
  int n_;
  int bits_ = 0;
  uint64_t count_ = 1;
};

// Convenience wrapper: all structures in index order.
std::vector<Structure> enumerate_structures(const Vocabulary& v, int n,
                                            uint64_t cap = uint64_t{1} << 20);

struct OracleModel {
  Structure model;
  Assignment witness;  // binds the free variable, if any
};

// Exhaustive search over all structures of exactly `n` elements (plain
// enumeration for small ground-atom counts, a grounded propositional search
// otherwise). At most one free variable, read existentially.
enum class OracleMethod { Auto, Enumerate, Ground };
std::optional<OracleModel> oracle_model_of_size(const Formula& f, int n,
                                                uint64_t cap = uint64_t{1} << 24,
                                                OracleMethod method = OracleMethod::Auto);

// First model of size 1..max_size, or nullopt (UNKNOWN; never UNSAT).
std::optional<OracleModel> oracle_sat(const Formula& f, int max_size,
                                      uint64_t cap = uint64_t{1} << 24);

template <class T>
std::set<std::vector<T>> restrict_relation(const std::set<std::vector<T>>& rel, int k) {
  std::set<std::vector<T>> out;
  for (const auto& t : rel) {
    if (k < 1 || k > static_cast<int>(t.size()))
      throw Error("restriction length " + std::to_string(k) + " out of range");
    out.insert(std::vector<T>(t.begin(), t.begin() + k));
  }
  return out;
}

// JSON: {"domain": [...], "relations": {"R": [["a","b"], ...]}}
Structure structure_from_json(const std::string& text);
std::string structure_to_json(const Structure& s);

}  // namespace uf1
