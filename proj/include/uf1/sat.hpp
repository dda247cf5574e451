// A small CDCL solver: two watched literals, first-UIP learning, VSIDS,
// phase saving, Luby restarts and solving under assumptions.
#pragma once

#include <cstdint>
#include <vector>

namespace uf1::sat {

using Var = int;

struct Lit {
  int x = -2;
  friend bool operator==(Lit a, Lit b) { return a.x == b.x; }
  friend bool operator!=(Lit a, Lit b) { return a.x != b.x; }
  friend bool operator<(Lit a, Lit b) { return a.x < b.x; }
};

inline Lit mk_lit(Var v, bool negative = false) { return Lit{2 * v + (negative ? 1 : 0)}; }
inline Lit operator~(Lit p) { return Lit{p.x ^ 1}; }
inline Var var(Lit p) { return p.x >> 1; }
inline bool sign(Lit p) { return p.x & 1; }

enum class Result { Sat, Unsat, Unknown };

class Solver {
 public:
  Solver();

  Var new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  size_t num_clauses() const { return num_original_; }
  uint64_t conflicts() const { return conflicts_; }

  // Returns false once the clause set is unsatisfiable at the root.
  bool add_clause(std::vector<Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) { return add_clause(std::vector<Lit>(lits)); }
  bool okay() const { return ok_; }

  // conflict_budget < 0 means no limit.
  Result solve(const std::vector<Lit>& assumptions = {}, int64_t conflict_budget = -1);

  // Model access after Sat.
  bool model_value(Var v) const { return model_[v]; }
  bool model_value(Lit p) const { return model_[var(p)] != sign(p); }

  // After an Unsat answer under assumptions: a subset of the assumptions
  // that is already inconsistent with the clauses (empty if the clauses
  // alone are unsatisfiable).
  const std::vector<Lit>& core() const { return core_; }

  // True or false when v is fixed by the clauses at the root level.
  int8_t root_value(Var v) const {
    if (assigns_[v] == kUndef || levels_[v] != 0) return -1;
    return assigns_[v] == kTrue ? 1 : 0;
  }

  void set_default_phase(bool positive) { default_positive_ = positive; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
  };
  struct Watcher {
    int cref;
    Lit blocker;
  };
  static constexpr int kNoReason = -1;
  enum : int8_t { kTrue = 0, kFalse = 1, kUndef = 2 };

  int8_t value(Lit p) const {
    int8_t a = assigns_[var(p)];
    return a == kUndef ? static_cast<int8_t>(kUndef) : static_cast<int8_t>(a ^ static_cast<int8_t>(sign(p)));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(int cref);
  void enqueue(Lit p, int reason);
  int propagate();
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  bool redundant(Lit p) const;
  void analyze_final(Lit p);
  void cancel_until(int lvl);
  Lit pick_branch();
  void reduce_db();
  void bump_var(Var v);
  void bump_clause(Clause& c);

  // Binary heap on activity.
  void heap_insert(Var v);
  void heap_up(int i);
  void heap_down(int i);
  Var heap_pop();
  bool heap_less(Var a, Var b) const { return activity_[a] > activity_[b]; }

  std::vector<Clause> clauses_;
  std::vector<int> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<int8_t> assigns_;
  std::vector<int> reason_;
  std::vector<int> levels_;
  std::vector<char> phase_;
  std::vector<char> seen_;
  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  std::vector<bool> model_;
  std::vector<Lit> core_;
  std::vector<Lit> assumptions_;
  double var_inc_ = 1, cla_inc_ = 1;
  double max_learnts_ = 0;
  uint64_t conflicts_ = 0;
  size_t num_original_ = 0;
  bool ok_ = true;
  bool default_positive_ = false;
};

}  // namespace uf1::sat
