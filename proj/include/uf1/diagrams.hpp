#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uf1/formula.hpp"
#include "uf1/structures.hpp"

namespace uf1 {

// An atom over k positions whose argument positions cover all of 0..k-1.
struct YAtom {
  std::string symbol;
  std::vector<int> pos;
  auto operator<=>(const YAtom&) const = default;
};

// All Y-atoms for |Y| = k over a vocabulary, ordered by symbol name and then
// lexicographically by position vector. Diagrams over the space are sign
// vectors; bit i set means atom i is positive.
class DiagramSpace {
 public:
  DiagramSpace(const Vocabulary& v, int k);

  const Vocabulary& vocabulary() const { return vocab_; }
  int arity() const { return k_; }
  size_t num_atoms() const { return atoms_.size(); }
  const YAtom& atom(size_t i) const { return atoms_[i]; }
  int find(const YAtom& a) const;  // -1 when absent
  // Number of diagrams; zero when there are no Y-atoms.
  uint64_t count() const { return atoms_.empty() ? 0 : uint64_t{1} << atoms_.size(); }
  Formula atom_formula(size_t i, const std::vector<std::string>& vars) const;

 private:
  Vocabulary vocab_;
  int k_;
  std::vector<YAtom> atoms_;
  std::map<YAtom, int> index_;
};

// Shared, cached space for (v, k).
std::shared_ptr<const DiagramSpace> diagram_space(const Vocabulary& v, int k);

std::vector<std::string> standard_vars(int k);  // x1..xk

class Diagram {
 public:
  Diagram(std::shared_ptr<const DiagramSpace> space, uint64_t bits);
  Diagram(std::shared_ptr<const DiagramSpace> space, uint64_t bits, std::vector<std::string> vars);

  const DiagramSpace& space() const { return *space_; }
  std::shared_ptr<const DiagramSpace> space_ptr() const { return space_; }
  int arity() const { return space_->arity(); }
  uint64_t index() const { return bits_; }  // canonical index
  bool positive(size_t i) const { return (bits_ >> i) & 1; }
  const std::vector<std::string>& vars() const { return vars_; }
  bool is_standard() const { return vars_ == standard_vars(arity()); }
  Diagram with_vars(std::vector<std::string> vars) const { return Diagram(space_, bits_, std::move(vars)); }

  std::vector<Formula> literals() const;
  Formula conjunction() const;
  std::string str() const;  // literal list

  bool operator==(const Diagram& o) const {
    return arity() == o.arity() && bits_ == o.bits_ && vars_ == o.vars_ &&
           space_->vocabulary() == o.space_->vocabulary();
  }

 private:
  std::shared_ptr<const DiagramSpace> space_;
  uint64_t bits_;
  std::vector<std::string> vars_;
};

std::vector<Formula> enumerate_y_atoms(const Vocabulary& v, const std::vector<std::string>& Y);
// Standard diagrams of arity k, in canonical index order.
std::vector<Diagram> enumerate_diagrams(const Vocabulary& v, int k);

// Surjections {0..from-1} -> {0..to-1}, lexicographic.
std::vector<std::vector<int>> surjections(int from, int to);

struct Projection {
  std::shared_ptr<const DiagramSpace> space;  // the q-ary space
  std::set<std::pair<int, bool>> literals;    // (atom index, sign); both signs on a clash
  bool contradictory = false;
  std::vector<Formula> formulas() const;  // over x1..xq
};

// delta / t for a surjection t: {0..k-1} -> {0..q-1}.
Projection project(const Diagram& d, const std::vector<int>& t);
// eta <=_f delta: project(delta, f) is consistent and contained in eta.
bool leq(const Diagram& eta, const std::vector<int>& f, const Diagram& delta);

struct InverseProjection {
  Diagram eta;
  std::vector<int> f;
};
// All (eta, f) with eta of arity p in k..max_arity and delta <=_f eta.
std::vector<InverseProjection> inverse_projections(const Diagram& delta, int max_arity);

// Every literal of d holds with x_i mapped to t[i-1] (repeated elements allowed).
bool diagram_holds(const Structure& s, const Tuple& t, const Diagram& d);

// Reads a literal set over `vars` as a full diagram of space(v, |vars|):
// nullopt unless every Y-atom occurs exactly once with one sign and
// nothing else occurs.
std::optional<Diagram> diagram_from_literals(const Vocabulary& v, const std::vector<std::string>& vars,
                                             const std::vector<Formula>& literals);

}  // namespace uf1
