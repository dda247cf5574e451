#include <doctest.h>

#include <algorithm>
#include <functional>

#include "../common/support.hpp"
#include "uf1/monadizer.hpp"

using namespace uf1;

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

// Membership in R_j restricted to k places, read straight off the three
// congruences rather than from good_sequence.
bool in_restriction(const Hypertorus& h, int j, const std::vector<TorusPoint>& s) {
  for (size_t i = 1; i < s.size(); ++i) {
    if (mod(s[i].a - s[0].a - (j - 1), h.n()) != 0) return false;
    if (mod(s[i].b - s[0].b - static_cast<int>(i), h.l()) != 0) return false;
    if (mod(s[i].c - s[0].c - 1, 3) != 0) return false;
  }
  return true;
}

Muf prepared(const Formula& f) {
  auto fv = free_variables(f);
  std::optional<std::string> x;
  if (!fv.empty()) x = *fv.begin();
  return preprocess_muf1(to_muf1(to_duf1(f), x));
}

Diagram binary(const std::vector<std::string>& lits) {
  std::vector<Formula> fs;
  for (const auto& l : lits) fs.push_back(parse(l));
  auto d = diagram_from_literals(Vocabulary{{"R", 2}}, standard_vars(2), fs);
  REQUIRE(d.has_value());
  return *d;
}

void flatten(Kind k, const Formula& f, std::vector<Formula>& out) {
  if (f->kind == k) {
    flatten(k, f->a, out);
    flatten(k, f->b, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

TEST_SUITE("monadizer") {

TEST_CASE("hypertorus examples") {
  Hypertorus h = build_hypertorus(2, 2);
  CHECK(h.size() == 12);
  CHECK(h.points().size() == 12);
  auto s1 = h.good_sequence({1, 1, 0}, 1);
  CHECK(s1 == std::vector<TorusPoint>{{1, 1, 0}, {1, 2, 1}});
  auto s2 = h.good_sequence({1, 1, 0}, 2);
  CHECK(s2 == std::vector<TorusPoint>{{1, 1, 0}, {2, 2, 1}});
  CHECK(h.good_sequence({1, 1, 0}, 2) == s2);
  for (size_t i = 0; i < h.points().size(); ++i) CHECK(h.index(h.point(static_cast<int>(i))) == static_cast<int>(i));
  CHECK_THROWS_AS(build_hypertorus(1, 2), Error);
  CHECK_THROWS_AS(h.good_sequence({1, 1, 0}, 3), Error);
}

TEST_CASE("hypertorus invariants hold exhaustively for n, l in 2..4") {
  for (int n = 2; n <= 4; ++n) {
    for (int l = 2; l <= 4; ++l) {
      Hypertorus h(n, l);
      const auto& pts = h.points();
      for (int j = 1; j <= n; ++j) {
        for (const auto& t : pts) {
          auto s = h.good_sequence(t, j);
          CHECK(s.front() == t);
          for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = a + 1; b < s.size(); ++b) CHECK(s[a] != s[b]);
        }
        for (int k = 2; k <= l; ++k) {
          // (i): one tuple per origin, found by scanning T^k.
          std::vector<int> origins(pts.size(), 0);
          std::vector<size_t> pick(static_cast<size_t>(k), 0);
          std::vector<TorusPoint> tup(static_cast<size_t>(k));
          std::set<std::vector<TorusPoint>> scanned;
          while (true) {
            for (int i = 0; i < k; ++i) tup[i] = pts[pick[i]];
            if (in_restriction(h, j, tup)) {
              ++origins[pick[0]];
              scanned.insert(tup);
            }
            int i = k - 1;
            while (i >= 0 && ++pick[i] == pts.size()) pick[i--] = 0;
            if (i < 0) break;
          }
          CHECK(std::all_of(origins.begin(), origins.end(), [](int c) { return c == 1; }));
          auto built = h.restriction(j, k);
          CHECK(std::set<std::vector<TorusPoint>>(built.begin(), built.end()) == scanned);
          // (ii) and (iii): no permutation lands in another relation, and only
          // the identity stays in R_j.
          for (const auto& s : built) {
            std::vector<int> perm(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) perm[i] = i;
            do {
              std::vector<TorusPoint> p;
              for (int i : perm) p.push_back(s[i]);
              bool identity = std::is_sorted(perm.begin(), perm.end());
              for (int i = 1; i <= n; ++i) {
                bool in = in_restriction(h, i, p);
                if (i != j) CHECK_FALSE(in);
                else CHECK(in == identity);
              }
            } while (std::next_permutation(perm.begin(), perm.end()));
          }
        }
      }
    }
  }
}

TEST_CASE("preprocess_muf1 establishes its three assumptions") {
  // No diamond at all: a binary one over a fresh symbol is added.
  Muf m = m_or(m_E(m_atom("P", 1)), m_top());
  Muf pre = preprocess_muf1(m);
  bool has_binary = false;
  std::set<std::string> printed;
  for (const auto& s : muf1_sub(pre)) {
    CHECK(s->kind != MKind::True);
    CHECK(s->kind != MKind::False);
    CHECK(s->kind != MKind::Or);
    if (s->kind == MKind::Diamond && s->space->arity() == 2) has_binary = true;
    printed.insert(print_muf(s));
  }
  CHECK(has_binary);
  CHECK(printed.count("!R0"));
  CHECK(muf_vocabulary(pre).contains("R0"));

  // Equivalent over every expansion of small structures.
  Vocabulary v{{"P", 1}, {"R0", 2}};
  for (int n = 1; n <= 2; ++n)
    for (const auto& s : enumerate_structures(v, n))
      for (int w = 0; w < n; ++w) CHECK(eval_muf1(s, w, m) == eval_muf1(s, w, pre));

  // An existing binary symbol is reused, and !R is added when missing.
  Muf d = m_diamond(binary({"R(x1,x2)", "R(x2,x1)"}), {m_top(), m_atom("P", 1)});
  Muf pd = preprocess_muf1(d);
  CHECK_FALSE(muf_vocabulary(pd).contains("R0"));
  std::set<std::string> ps;
  for (const auto& s : muf1_sub(pd)) ps.insert(print_muf(s));
  CHECK(ps.count("!R"));
  CHECK(ps.count("!(R & !R)"));
  Vocabulary vr{{"P", 1}, {"R", 2}};
  for (int n = 1; n <= 2; ++n)
    for (const auto& s : enumerate_structures(vr, n))
      for (int w = 0; w < n; ++w) CHECK(eval_muf1(s, w, d) == eval_muf1(s, w, pd));
}

TEST_CASE("context over {R/2}") {
  Muf pre = prepared(parse("exists y. (R(x,y) & !R(y,x) & P(y))"));
  auto ctx = build_context(pre);
  CHECK(ctx.M == 2);
  CHECK(ctx.delta[2].size() == 4);
  CHECK(ctx.N == 4);
  CHECK(ctx.torus->size() == 24);
  CHECK(ctx.vstar().size() == ctx.sub.size() + 24);
  CHECK(ctx.D == Vocabulary{{"R", 2}});
  // Every diagram has the identity and the swap as inverse projections.
  for (const auto& inv : ctx.inverse[2]) CHECK(inv.size() == 2);
  CHECK(ctx.legend().find("P_sub0\t") == 0);

  Budgets small;
  small.torus = 23;
  CHECK_THROWS_AS(build_context(pre, small), BudgetExceeded);
  small = Budgets();
  small.diagrams = 3;
  CHECK_THROWS_AS(build_context(pre, small), BudgetExceeded);
  CHECK_THROWS_AS(build_context(m_atom("P", 1)), Error);
}

TEST_CASE("translate_star shape") {
  Muf d = m_diamond(binary({"R(x1,x2)", "!R(x2,x1)"}), {m_atom("P", 1), m_atom("Q", 1)});
  auto ctx = build_context(preprocess_muf1(d));
  auto star = translate_star(ctx);
  auto fv = free_variables(star.star);
  CHECK(fv == std::set<std::string>{"x"});
  Vocabulary out = vocabulary_of(star.star);
  Vocabulary vs = ctx.vstar();
  for (const auto& s : out.symbols()) {
    CHECK(s.arity == 1);
    CHECK(vs.contains(s.name));
  }
  // Diag has one disjunct per torus point.
  Formula dg = diag(ctx, 2, muf_diagram(d).index(), {"x1", "x2"});
  std::vector<Formula> parts;
  flatten(Kind::And, dg, parts);
  std::vector<Formula> alts;
  flatten(Kind::Or, dg->kind == Kind::And ? dg->a : dg, alts);
  CHECK(alts.size() == 24);
  // The clause for the diamond quantifies x2 and contains Diag.
  int i = ctx.index_of(d);
  std::string self = "P_sub" + std::to_string(i) + "(x1)";
  bool found = false;
  std::vector<Formula> clauses;
  flatten(Kind::And, star.sub, clauses);
  for (const auto& c : clauses) {
    std::string s = print(c);
    if (s.find("forall x1. " + self + " <->") == std::string::npos) continue;
    found = true;
    CHECK(s.find("exists x2.") != std::string::npos);
    CHECK(s.find(print(alts[0])) != std::string::npos);
  }
  CHECK(found);
  std::vector<Formula> uniq;
  flatten(Kind::And, star.uniq, uniq);
  CHECK(uniq.size() == 24 * 23 / 2);

  Budgets tiny;
  tiny.formula_nodes = 100;
  CHECK_THROWS_AS(translate_star(ctx, tiny), BudgetExceeded);
}

TEST_CASE("torus model construction") {
  Muf pre = prepared(parse("forall x. exists y. (R(x,y) & !R(y,x))"));
  auto ctx = build_context(pre);
  Structure s({"a", "b"});
  s.add_symbol("R", 2);
  auto t = build_torus_model(s, ctx);
  CHECK(t.size() == 2 * 24);
  CHECK(t.domain()[0] == "a@1_1_0");
  for (int u = 0; u < t.size(); ++u) {
    int count = 0;
    for (const auto& p : ctx.torus->points()) count += t.holds(ctx.p_t(p), {u});
    CHECK(count == 1);
  }
  Budgets small;
  small.model_elements = 47;
  CHECK_THROWS_AS(build_torus_model(s, ctx, small), BudgetExceeded);
}

TEST_CASE("corpus: torus models satisfy psi* and the inverse model recovers psi") {
  auto corpus = support::load_corpus(UF1_CORPUS_DIR "/uf1");
  int checked = 0;
  for (const auto& c : corpus) {
    if (c.expect != "sat" || vocabulary_of(c.formula).max_arity() > 2) continue;
    auto model = oracle_sat(c.formula, 3);
    if (!model) continue;
    INFO(c.name);
    Muf pre = prepared(c.formula);
    auto ctx = build_context(pre);
    auto star = translate_star(ctx);
    int w = model->witness.empty() ? 0 : model->witness.begin()->second;
    Structure base = model->model;
    for (const auto& sym : ctx.V.symbols())
      if (!base.has_symbol(sym.name)) base.add_symbol(sym.name, sym.arity);
    REQUIRE(eval_muf1(base, w, pre));

    Structure tm = build_torus_model(model->model, ctx);
    int T = ctx.torus->size();
    for (int t : {0, 7, T - 1}) CHECK(model_check(tm, {{"x", w * T + t}}, star.star));

    auto inv = build_inverse_model(tm, ctx, star);
    const Structure& b = inv.model;
    for (size_t i = 0; i < ctx.sub.size(); ++i)
      for (int u = 0; u < b.size(); ++u)
        CHECK(eval_muf1(b, u, ctx.sub[i]) == tm.holds(ctx.p_sub(static_cast<int>(i)), {u}));
    CHECK(eval_muf1(b, w * T, pre));
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("inverse model: diagram formulas and tuples agree") {
  Muf pre = prepared(parse("forall x. (P(x) <-> exists y. (R(x,y) & !P(y)))"));
  auto ctx = build_context(pre);
  auto star = translate_star(ctx);
  auto model = oracle_sat(parse("forall x. (P(x) <-> exists y. (R(x,y) & !P(y)))"), 2);
  REQUIRE(model.has_value());
  Structure tm = build_torus_model(model->model, ctx);
  auto inv = build_inverse_model(tm, ctx, star);
  const Structure& b = inv.model;
  std::vector<std::string> xs{"x1", "x2"};
  int n = tm.size();
  for (size_t d = 0; d < ctx.delta[2].size(); ++d) {
    Evaluator dg(tm, diag(ctx, 2, d, xs), xs);
    Evaluator pc(tm, precons(ctx, 2, d, xs), xs);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        bool in_b = diagram_holds(b, {u, v}, ctx.delta[2][d]);
        // Tuples picked out by Diag carry the diagram in b, and tuples of
        // the diagram in b meet the consistency requirements.
        if (dg({u, v})) CHECK(in_b);
        if (in_b) CHECK(pc({u, v}));
      }
    }
  }
  int type1 = 0;
  for (const auto& [U, e] : inv.types) type1 += e.type == 1;
  CHECK(type1 > 0);

  Structure broken = tm;
  broken.set(ctx.p_t(ctx.torus->point(1)), {0});
  CHECK_THROWS_WITH_AS(build_inverse_model(broken, ctx, star), doctest::Contains("psi_uniq"), Error);
}

}  // TEST_SUITE
