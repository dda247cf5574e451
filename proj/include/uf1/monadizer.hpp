// MUF1 -> monadic FO: hypertori, the preprocessing assumptions, the
// translation psi*(x), and the two model constructions linking the sides.
#pragma once

#include "uf1/normalizer.hpp"

namespace uf1 {

struct TorusPoint {
  int a = 1;  // 1..n
  int b = 1;  // 1..l
  int c = 0;  // 0..2
  auto operator<=>(const TorusPoint&) const = default;
  std::string str() const;  // a_b_c
};

class Hypertorus {
 public:
  Hypertorus(int n, int l);

  int n() const { return n_; }
  int l() const { return l_; }
  int size() const { return 3 * n_ * l_; }
  // Points in lexicographic (a, b, c) order.
  const std::vector<TorusPoint>& points() const { return points_; }
  int index(const TorusPoint& t) const;
  const TorusPoint& point(int i) const { return points_[static_cast<size_t>(i)]; }

  // The j-th good l-ary sequence originating from t1 (1 <= j <= n).
  std::vector<TorusPoint> good_sequence(const TorusPoint& t1, int j) const;
  // R_j restricted to its first k places, one tuple per origin in point order.
  std::vector<std::vector<TorusPoint>> restriction(int j, int k) const;

 private:
  int n_, l_;
  std::vector<TorusPoint> points_;
};

Hypertorus build_hypertorus(int n, int l);

// (a) a binary diamond occurs, (b) no true/false, (c) R and !R occur for
// every diagram symbol R. Or is rewritten with ! and &.
Muf preprocess_muf1(const Muf& m);

struct TranslationContext {
  Muf psi;
  Vocabulary V;       // all symbols of psi
  Vocabulary D;       // symbols of the diagrams
  int M = 2;          // maximum diagram arity
  int N = 0;          // max |Delta_k|
  std::vector<std::vector<Diagram>> delta;  // delta[k] = Delta_k for 2 <= k <= M
  std::shared_ptr<const Hypertorus> torus;  // T(N, M)
  std::vector<Muf> sub;                     // SUB_psi
  std::unordered_map<Muf, int, MufHash, MufEq> sub_index;
  // Per arity and diagram index: diamond subformulas over that diagram.
  std::vector<std::vector<std::vector<int>>> diamonds;
  // Per arity and diagram index: Delta(delta) as (arity of eta, index of eta, f).
  struct Inverse {
    int p;
    uint64_t eta;
    std::vector<int> f;
  };
  std::vector<std::vector<std::vector<Inverse>>> inverse;

  std::string p_sub(int i) const { return "P_sub" + std::to_string(i); }
  std::string p_t(const TorusPoint& t) const { return "P_t_" + t.str(); }
  int index_of(const Muf& m) const;  // throws if m is not in SUB
  Vocabulary vstar() const;
  // T_delta for diagram idx of arity k: b_k sends it to R_{idx+1}.
  std::vector<std::vector<TorusPoint>> t_delta(int k, uint64_t idx) const;
  // One line per P_sub<i>: "P_sub<i>\t<printed subformula>".
  std::string legend() const;
};

TranslationContext build_context(const Muf& preprocessed, const Budgets& budgets = Budgets());

// psi*(x) and its named parts; the free variable is x.
struct StarFormula {
  Formula total, uniq, local, sub, root;
  Formula star;
};
StarFormula translate_star(const TranslationContext& ctx, const Budgets& budgets = Budgets());

// Formula families over x1..xk (exposed for tests and diagnostics).
Formula precons(const TranslationContext& ctx, int k, uint64_t idx, const std::vector<std::string>& xs);
Formula cons(const TranslationContext& ctx, int k, uint64_t idx, const std::vector<std::string>& xs);
Formula diag(const TranslationContext& ctx, int k, uint64_t idx, const std::vector<std::string>& xs);

// Domain M x T with elements "u@a_b_c"; element (u, t) sits at u * |T| + index(t).
Structure build_torus_model(const Structure& s, const TranslationContext& ctx,
                            const Budgets& budgets = Budgets());

struct InverseModel {
  Structure model;
  // Per subset (sorted element list) of size 2..M: its type, tuple and diagram.
  struct Entry {
    int type;
    Tuple tuple;
    uint64_t diagram;
  };
  std::map<std::vector<int>, Entry> types;
};
// Throws naming the failing conjunct when a does not satisfy the sentence
// part of psi*(x).
InverseModel build_inverse_model(const Structure& a, const TranslationContext& ctx, const StarFormula& star);

}  // namespace uf1
