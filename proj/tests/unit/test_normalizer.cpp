#include <doctest.h>

#include <functional>
#include <random>

#include "../common/support.hpp"
#include "gen.hpp"
#include "uf1/normalizer.hpp"

using namespace uf1;

namespace {

// Disjuncts of a top-level disjunction.
void flatten_or(const Formula& f, std::vector<Formula>& out) {
  if (f->kind == Kind::Or) {
    flatten_or(f->a, out);
    flatten_or(f->b, out);
  } else {
    out.push_back(f);
  }
}

Diagram binary(const std::vector<std::string>& lits) {
  std::vector<Formula> fs;
  for (const auto& l : lits) fs.push_back(parse(l));
  auto d = diagram_from_literals(Vocabulary{{"R", 2}}, standard_vars(2), fs);
  REQUIRE(d.has_value());
  return *d;
}

}  // namespace

TEST_SUITE("normalizer") {

TEST_CASE("to_duf1 on the introductory example") {
  Formula f = parse("exists y. (!R(x,y) & P(y))");
  Formula d = to_duf1(f);
  CHECK(check_duf1(d).member);
  std::vector<Formula> ds;
  flatten_or(d, ds);
  REQUIRE(ds.size() == 2);
  std::set<std::set<std::string>> got;
  for (const auto& g : ds) {
    REQUIRE(g->kind == Kind::Exists);
    CHECK(g->name == "y");
    std::vector<Formula> cs;
    std::function<void(const Formula&)> flat = [&](const Formula& h) {
      if (h->kind == Kind::And) {
        flat(h->a);
        flat(h->b);
      } else {
        cs.push_back(h);
      }
    };
    flat(g->a);
    std::set<std::string> names;
    for (const auto& c : cs) names.insert(print(c));
    got.insert(names);
  }
  std::set<std::set<std::string>> want{{"!R(x,y)", "!R(y,x)", "P(y)"}, {"!R(x,y)", "R(y,x)", "P(y)"}};
  CHECK(got == want);
  Vocabulary v{{"P", 1}, {"R", 2}};
  for (int n = 1; n <= 3; ++n) CHECK_FALSE(support::duf1_disagreement(v, n, f, d).has_value());
}

TEST_CASE("to_duf1 simple cases") {
  CHECK(print(to_duf1(parse("exists y. P(y)"))) == "exists y. P(y)");
  CHECK(to_duf1(parse("exists y. (R(x,y) & !R(x,y) & P(y))"))->kind == Kind::False);
  CHECK(to_duf1(top())->kind == Kind::True);
  CHECK_THROWS_AS(to_duf1(parse("R(x,y)")), FragmentError);
  Budgets tiny;
  tiny.formula_nodes = 5;
  CHECK_THROWS_AS(to_duf1(parse("forall x. exists y. (R(x,y) & (P(x) <-> !P(y)))"), tiny), BudgetExceeded);
}

TEST_CASE("check_duf1") {
  CHECK(check_duf1(top()).member);
  CHECK(check_duf1(bot()).member);
  CHECK(check_duf1(parse("P(x) & !Q(x)")).member);
  CHECK(check_duf1(parse("R(x,x)")).member);
  auto r = check_duf1(parse("exists y. (R(x,y) & P(y))"));
  CHECK_FALSE(r.member);
  CHECK(r.rule == "duf1.iii.diagram");
  CHECK(check_duf1(parse("exists y. (R(x,y) & !R(y,x) & P(y))")).member);
  // Rule (iv) over a rule (iii) formula.
  CHECK(check_duf1(parse("exists x. exists y. (R(x,y) & !R(y,x) & true)")).member);
  // The conjunction beside the diagram must be nonempty.
  CHECK(check_duf1(parse("exists y. (R(x,y) & !R(y,x))")).rule == "duf1.iii.empty");
  // Conjuncts beside a diagram have one free variable at most.
  CHECK_FALSE(check_duf1(parse("exists y. (R(x,y) & !R(y,x) & (P(x) | P(y)))")).member);
  CHECK(check_duf1(parse("R(x,y)")).rule == "duf1.i.atom");
}

TEST_CASE("to_muf1") {
  CHECK(print_muf(to_muf1(parse("P(x)"), "x")) == "P");
  CHECK(print_muf(to_muf1(parse("exists y. P(y)"))) == "<E>P");
  CHECK(print_muf(to_muf1(parse("R(x,x)"), "x")) == "R");
  Formula f = parse("exists y. (R(x,y) & !R(y,x) & P(y))");
  Muf m = to_muf1(f, "x");
  REQUIRE(m->kind == MKind::Diamond);
  CHECK(m->args[0]->kind == MKind::True);
  CHECK(print_muf(m->args[1]) == "P");
  CHECK(muf_diagram(m).str() == "{R(x1,x2), !R(x2,x1)}");
  CHECK(print_muf(m) == "<D 2#1>(true,P)");
  CHECK_THROWS_AS(to_muf1(parse("exists y. (R(x,y) & P(y))")), FragmentError);
  CHECK_THROWS_AS(to_muf1(parse("P(x) & P(y)")), Error);
}

TEST_CASE("eval_muf1") {
  Structure s({"a", "b"});
  s.add_symbol("R", 2);
  s.add_symbol("P", 1);
  s.set("R", {0, 1});
  s.set("P", {1});
  Muf d = m_diamond(binary({"R(x1,x2)", "!R(x2,x1)"}), {m_top(), m_atom("P", 1)});
  CHECK(eval_muf1(s, 0, d));
  CHECK_FALSE(eval_muf1(s, 1, d));
  MufEvaluator ev(s);
  auto w = ev.witness(0, d);
  REQUIRE(w.has_value());
  CHECK(*w == Tuple{0, 1});
  CHECK(diagram_holds(s, *w, muf_diagram(d)));

  CHECK_FALSE(eval_muf1(s, 0, m_atom("R", 2)));
  s.set("R", {0, 0});
  CHECK(eval_muf1(s, 0, m_atom("R", 2)));

  Structure e = Structure::of_size(2);
  e.add_symbol("P", 1);
  for (int u = 0; u < 2; ++u) CHECK_FALSE(eval_muf1(e, u, m_E(m_atom("P", 1))));
}

TEST_CASE("muf1_sub") {
  auto sub = muf1_sub(m_not(m_atom("P", 1)));
  REQUIRE(sub.size() == 2);
  CHECK(print_muf(sub[0]) == "P");
  CHECK(print_muf(sub[1]) == "!P");
  auto d = m_diamond(binary({"R(x1,x2)", "R(x2,x1)"}), {m_atom("P", 1), m_atom("Q", 1)});
  auto s2 = muf1_sub(d);
  CHECK(s2.size() == 3);
  // Structurally equal terms are listed once.
  auto twice = muf1_sub(m_and(m_atom("P", 1), m_atom("P", 1)));
  CHECK(twice.size() == 2);
}

TEST_CASE("corpus: every stage preserves truth on structures up to size 2") {
  auto corpus = support::load_corpus(UF1_CORPUS_DIR "/uf1");
  REQUIRE(corpus.size() >= 20);
  for (const auto& c : corpus) {
    INFO(c.name);
    Formula d = to_duf1(c.formula);
    CHECK(check_duf1(d).member);
    Muf m = to_muf1(d);
    Vocabulary v = vocabulary_of(c.formula);
    for (int n = 1; n <= 2; ++n) {
      CHECK_FALSE(support::duf1_disagreement(v, n, c.formula, d).has_value());
      CHECK_FALSE(support::muf1_disagreement(v, n, c.formula, m).has_value());
    }
  }
}

TEST_CASE("property: random UF1 formulas survive both translations") {
  std::mt19937_64 rng(23);
  testgen::Spec spec{{{"P", 1}, {"R", 2}}, {"x", "y", "z"}, 4, true};
  int tried = 0;
  for (int i = 0; i < 4000 && tried < 150; ++i) {
    Formula f = testgen::random_formula(rng, spec);
    if (free_variables(f).size() > 1 || !check_uf1(f).member) continue;
    ++tried;
    INFO(print(f));
    Formula d = to_duf1(f);
    REQUIRE(check_duf1(d).member);
    Muf m = to_muf1(d);
    Vocabulary v = vocabulary_of(f);
    v.add("P", 1);
    v.add("R", 2);
    for (int n = 1; n <= 2; ++n) {
      CHECK_FALSE(support::duf1_disagreement(v, n, f, d).has_value());
      CHECK_FALSE(support::muf1_disagreement(v, n, f, m).has_value());
    }
  }
  CHECK(tried >= 100);
}

TEST_CASE("property: diamonds are witnessed by tuples in the diagram") {
  auto corpus = support::load_corpus(UF1_CORPUS_DIR "/uf1");
  std::mt19937_64 rng(29);
  for (const auto& c : corpus) {
    Muf m = to_muf1(to_duf1(c.formula));
    Vocabulary v = vocabulary_of(c.formula);
    StructureSpace space(v, 2, uint64_t{1} << 40);
    for (int i = 0; i < 20; ++i) {
      Structure s = space.at(rng() % space.count());
      MufEvaluator ev(s);
      for (const auto& sub : muf1_sub(m)) {
        if (sub->kind != MKind::Diamond) continue;
        for (int w = 0; w < s.size(); ++w) {
          if (!ev(w, sub)) continue;
          auto t = ev.witness(w, sub);
          REQUIRE(t.has_value());
          CHECK((*t)[0] == w);
          CHECK(diagram_holds(s, *t, muf_diagram(sub)));
        }
      }
    }
  }
}

}  // TEST_SUITE
