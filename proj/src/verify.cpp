#include "uf1/verify.hpp"

namespace uf1 {

std::optional<Structure> disagreement(const Vocabulary& v, int n, const Formula& f,
                                      const std::function<bool(const Structure&, int)>& eval_b,
                                      const StageEncoder& encode_b) {
  auto fv = free_variables(f);
  std::optional<std::string> x;
  if (!fv.empty()) x = *fv.begin();
  int bits = 0;
  for (const auto& s : v.symbols()) {
    int c = 1;
    for (int i = 0; i < s.arity; ++i) c *= n;
    bits += c;
  }
  if (bits <= 16) {
    StructureSpace space(v, n);
    Structure s = space.at(0);
    std::vector<std::string> free;
    if (x) free.push_back(*x);
    for (uint64_t i = 0; i < space.count(); ++i) {
      space.load(i, s);
      Evaluator ev(s, f, free);
      for (int w = 0; w < (x ? n : 1); ++w) {
        bool a = x ? ev({w}) : ev({});
        if (a != eval_b(s, w)) return s;
      }
    }
    return std::nullopt;
  }
  sat::Solver solver;
  Grounder g(solver, v, n);
  std::vector<sat::Lit> diffs;
  for (int w = 0; w < (x ? n : 1); ++w) {
    Assignment env;
    if (x) env[*x] = w;
    sat::Lit a = g.encode(f, env);
    sat::Lit b = encode_b(g, w);
    diffs.push_back(~g.mk_iff(a, b));
  }
  solver.add_clause(diffs);
  if (solver.solve() != sat::Result::Sat) return std::nullopt;
  return g.decode();
}

std::optional<Structure> duf1_disagreement(const Vocabulary& v, int n, const Formula& f, const Formula& d) {
  auto fv = free_variables(f);
  std::vector<std::string> free(fv.begin(), fv.end());
  auto eval = [&](const Structure& s, int w) {
    Evaluator ev(s, d, free);
    return free.empty() ? ev({}) : ev({w});
  };
  auto enc = [&](Grounder& g, int w) {
    Assignment env;
    if (!free.empty()) env[free[0]] = w;
    return g.encode(d, env);
  };
  return disagreement(v, n, f, eval, enc);
}

std::optional<Structure> muf1_disagreement(const Vocabulary& v, int n, const Formula& f, const Muf& m) {
  std::map<std::pair<const MufNode*, int>, sat::Lit> memo;
  auto eval = [&](const Structure& s, int w) { return eval_muf1(s, w, m); };
  auto enc = [&](Grounder& g, int w) { return ground_muf(g, m, w, memo); };
  return disagreement(v, n, f, eval, enc);
}

}  // namespace uf1
