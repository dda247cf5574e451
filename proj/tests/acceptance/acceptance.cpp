// Acceptance suite: one PASS/FAIL line per criterion.
//
//   uf1_acceptance [--only N]... [--known-failure N]...
//
// Exit status is 0 when every criterion passes, or when the failing ones are
// exactly those named with --known-failure. A known failure that starts
// passing is reported and makes the run fail, so the list cannot go stale.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "../common/support.hpp"
#include "../unit/gen.hpp"
#include "../unit/semantic.hpp"
#include "uf1/cli.hpp"
#include "uf1/pipeline.hpp"
#include "uf1/tiling.hpp"

using namespace uf1;

namespace {

const std::string kCorpus = UF1_CORPUS_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_s(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

std::optional<std::string> free_var_of(const Formula& f) {
  auto fv = free_variables(f);
  if (fv.empty()) return std::nullopt;
  return *fv.begin();
}

Muf prepared(const Formula& f) { return preprocess_muf1(to_muf1(to_duf1(f), free_var_of(f))); }

// ---------------------------------------------------------------------------

int mod(int a, int m) { return ((a % m) + m) % m; }

// R_j membership read off the defining congruences.
bool in_relation(const Hypertorus& h, int j, const std::vector<TorusPoint>& s) {
  for (size_t i = 1; i < s.size(); ++i) {
    if (mod(s[i].a - s[0].a - (j - 1), h.n()) != 0) return false;
    if (mod(s[i].b - s[0].b - static_cast<int>(i), h.l()) != 0) return false;
    if (mod(s[i].c - s[0].c - 1, 3) != 0) return false;
  }
  return true;
}

Outcome hypertorus_invariants() {
  auto t0 = Clock::now();
  long violations = 0, checks = 0;
  for (int n = 2; n <= 4; ++n)
    for (int l = 2; l <= 4; ++l) {
      Hypertorus h(n, l);
      const auto& pts = h.points();
      for (int j = 1; j <= n; ++j)
        for (int k = 2; k <= l; ++k) {
          // (i) every point starts exactly one tuple of R_j restricted to k,
          // found by scanning all of T^k.
          std::vector<int> origins(pts.size(), 0);
          std::set<std::vector<TorusPoint>> scanned;
          std::vector<size_t> pick(static_cast<size_t>(k), 0);
          std::vector<TorusPoint> tup(static_cast<size_t>(k));
          while (true) {
            for (int i = 0; i < k; ++i) tup[static_cast<size_t>(i)] = pts[pick[static_cast<size_t>(i)]];
            if (in_relation(h, j, tup)) {
              ++origins[pick[0]];
              scanned.insert(tup);
            }
            int i = k - 1;
            while (i >= 0 && ++pick[static_cast<size_t>(i)] == pts.size()) pick[static_cast<size_t>(i--)] = 0;
            if (i < 0) break;
          }
          for (int c : origins) violations += c != 1, ++checks;
          auto built = h.restriction(j, k);
          violations += std::set<std::vector<TorusPoint>>(built.begin(), built.end()) != scanned;
          // (ii) elements of a tuple are distinct; (iii) no permutation of a
          // tuple lands in another R_i, and only the identity stays in R_j.
          for (const auto& s : built) {
            for (size_t a = 0; a < s.size(); ++a)
              for (size_t b = a + 1; b < s.size(); ++b) violations += s[a] == s[b];
            std::vector<int> perm(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) perm[static_cast<size_t>(i)] = i;
            do {
              std::vector<TorusPoint> p;
              for (int i : perm) p.push_back(s[static_cast<size_t>(i)]);
              bool identity = std::is_sorted(perm.begin(), perm.end());
              for (int i = 1; i <= n; ++i) {
                bool in = in_relation(h, i, p);
                violations += i == j ? in != identity : in;
                ++checks;
              }
            } while (std::next_permutation(perm.begin(), perm.end()));
          }
        }
    }
  double t = seconds_since(t0);
  return {violations == 0 && t < 10,
          std::to_string(checks) + " checks, " + std::to_string(violations) + " violations, " + fmt_s(t)};
}

Outcome diagram_counts() {
  size_t binary = enumerate_diagrams(Vocabulary{{"R", 2}}, 2).size();
  Vocabulary tau{{"P", 1}, {"R", 2}, {"S", 3}};
  size_t mixed = enumerate_diagrams(tau, 2).size();
  std::vector<std::string> lits{"R(x,y)",   "!R(y,x)", "S(y,x,x)",  "S(x,y,x)",
                                "!S(x,x,y)", "S(x,y,y)", "!S(y,x,y)", "S(y,y,x)"};
  std::vector<Formula> fs;
  for (const auto& l : lits) fs.push_back(parse(l));
  auto atoms = enumerate_y_atoms(tau, {"x", "y"});
  std::set<std::string> want, got;
  for (const auto& a : atoms) got.insert(print(a));
  for (const auto& f : fs) want.insert(print(f->kind == Kind::Not ? f->a : f));
  auto d = diagram_from_literals(tau, {"x", "y"}, fs);
  bool ok = binary == 4 && mixed == 256 && atoms.size() == 8 && want == got && d.has_value() &&
            d->space().num_atoms() == 8;
  return {ok, "|D2({R/2})| = " + std::to_string(binary) + ", |D2({P,R,S})| = " + std::to_string(mixed) + ", " +
                  std::to_string(atoms.size()) + " Y-atoms, example diagram " + (d ? "found" : "missing")};
}

Outcome leq_entailment() {
  auto t0 = Clock::now();
  long checked = 0, mismatches = 0, positive = 0;
  for (const auto& v : {Vocabulary{{"R", 2}}, Vocabulary{{"R", 3}}})
    for (int k = 2; k <= 3; ++k) {
      auto deltas = enumerate_diagrams(v, k);
      for (int q = 2; q <= k; ++q) {
        auto etas = enumerate_diagrams(v, q);
        for (const auto& f : surjections(k, q))
          for (const auto& delta : deltas) {
            auto rhs = testsem::substituted(delta, f);
            for (const auto& eta : etas) {
              bool want = testsem::entails(eta.literals(), rhs, q);
              mismatches += leq(eta, f, delta) != want;
              positive += want;
              ++checked;
            }
          }
      }
    }
  double t = seconds_since(t0);
  return {mismatches == 0 && positive > 0 && t < 60,
          std::to_string(checked) + " instances (" + std::to_string(positive) + " entailed), " +
              std::to_string(mismatches) + " mismatches, " + fmt_s(t)};
}

Outcome stage_equivalence() {
  auto t0 = Clock::now();
  int formulas = 0, bad = 0;
  std::string first_bad;
  for (const auto& e : support::load_corpus(kCorpus + "/uf1")) {
    Vocabulary v = vocabulary_of(e.formula);
    if (v.symbols().size() > 2 || v.max_arity() > 3) continue;
    ++formulas;
    Formula d = to_duf1(e.formula);
    Muf m = to_muf1(d, free_var_of(e.formula));
    for (int n = 1; n <= 3; ++n)
      if (duf1_disagreement(v, n, e.formula, d) || muf1_disagreement(v, n, e.formula, m)) {
        ++bad;
        if (first_bad.empty()) first_bad = e.name + " at size " + std::to_string(n);
        break;
      }
  }
  return {formulas >= 20 && bad == 0, std::to_string(formulas) + " corpus formulas, sizes 1..3, " +
                                           std::to_string(bad) + " disagreements" +
                                           (first_bad.empty() ? "" : " (" + first_bad + ")") + ", " +
                                           fmt_s(seconds_since(t0))};
}

Outcome torus_soundness() {
  int formulas = 0, failures = 0;
  long points = 0;
  for (const auto& e : support::load_corpus(kCorpus + "/uf1")) {
    if (e.expect != "sat") continue;
    auto model = oracle_sat(e.formula, 3);
    if (!model) continue;
    std::optional<TranslationContext> ctx;
    try {
      ctx = build_context(prepared(e.formula));
    } catch (const BudgetExceeded&) {
      continue;
    }
    auto star = translate_star(*ctx);
    int w = model->witness.empty() ? 0 : model->witness.begin()->second;
    Structure tm = build_torus_model(model->model, *ctx);
    Evaluator ev(tm, star.star, {"x"});
    int T = ctx->torus->size();
    bool ok = true;
    for (int t = 0; t < T; ++t, ++points) ok = ev({w * T + t}) && ok;
    failures += !ok;
    ++formulas;
  }
  return {formulas >= 5 && failures == 0, std::to_string(formulas) + " formulas, " + std::to_string(points) +
                                              " torus points, " + std::to_string(failures) + " failures"};
}

Outcome inverse_completeness() {
  int sat = 0, unsat = 0, failures = 0, skipped = 0;
  long checks = 0;
  std::vector<Formula> inputs;
  for (const auto& e : support::load_corpus(kCorpus + "/uf1")) inputs.push_back(e.formula);
  inputs.push_back(parse("exists x. exists y. !R(x,y)"));
  for (const auto& f : inputs) {
    std::optional<TranslationContext> ctx;
    std::optional<MfoResult> r;
    std::optional<StarFormula> star;
    try {
      ctx = build_context(prepared(f));
      star = translate_star(*ctx);
      r = decide_mfo(star->star);
    } catch (const BudgetExceeded&) {
      ++skipped;
      continue;
    }
    if (!r->sat) {
      ++unsat;
      continue;
    }
    ++sat;
    auto inv = build_inverse_model(r->model, *ctx, *star);
    bool ok = true;
    for (size_t i = 0; i < ctx->sub.size(); ++i)
      for (int u = 0; u < r->model.size(); ++u, ++checks)
        ok = ok && eval_muf1(inv.model, u, ctx->sub[i]) == r->model.holds(ctx->p_sub(static_cast<int>(i)), {u});
    failures += !ok;
  }
  return {sat > 0 && failures == 0, std::to_string(sat) + " SAT answers (" + std::to_string(unsat) + " UNSAT, " +
                                        std::to_string(skipped) + " over budget), " + std::to_string(checks) +
                                        " (alpha, element) checks, " + std::to_string(failures) + " failures"};
}

Outcome mfo_vs_oracle() {
  std::mt19937_64 rng(20240601);
  testgen::Spec spec{{{"P", 1}, {"Q", 1}, {"S", 1}}, {"x", "y", "z"}, 3, true};
  int total = 0, sat = 0, unsat = 0, bad = 0;
  while (total < 60) {
    Formula f = testgen::random_formula(rng, spec);
    // Conjunctions on alternate draws keep unsatisfiable instances common.
    if (total % 2) f = conj(f, conj(testgen::random_formula(rng, spec), testgen::random_formula(rng, spec)));
    auto fv = free_variables(f);
    f = exists(std::vector<std::string>(fv.begin(), fv.end()), f);
    auto r = decide_mfo(f);
    auto o = oracle_sat(f, 4);
    bool ok = r.sat ? model_check(r.model, {}, f) : !o.has_value();
    if (o && !r.sat) ok = false;
    bad += !ok;
    (r.sat ? sat : unsat) += 1;
    ++total;
  }
  return {total >= 30 && bad == 0 && sat > 0 && unsat > 0,
          std::to_string(total) + " seeded formulas (" + std::to_string(sat) + " SAT, " + std::to_string(unsat) +
              " UNSAT), " + std::to_string(bad) + " disagreements"};
}

// Runs `decide` through the command line entry point under the desk profile.
struct Verdict {
  int code;
  double secs;
  std::string err;
};
Verdict cli_decide(const std::string& text) {
  setenv("UF1_BUDGET_PROFILE", "desk", 1);
  std::ostringstream out, err;
  std::istringstream in(text);
  auto t0 = Clock::now();
  int code = run_cli({"decide", "-"}, out, err, in);
  return {code, seconds_since(t0), err.str()};
}

const char* verdict_name(int code) {
  switch (code) {
    case kExitYes: return "SAT";
    case kExitNo: return "UNSAT";
    case kExitBudget: return "budget exceeded";
    case kExitRefused: return "refused";
    default: return "error";
  }
}

Outcome end_to_end() {
  struct Case {
    std::string label, text;
    int want;
  };
  std::vector<Case> cases{
      {"exists x exists y !R(x,y)", "exists x. exists y. !R(x,y)", kExitYes},
      {"polyadic example, k = 3", "exists x2. exists x3. (R(x1,x2,x3) & P(x2) & P(x3))", kExitYes},
      {"!(exists x !R(x,x)) & exists x !R(x,x)", "!(exists x. !R(x,x)) & exists x. !R(x,x)", kExitNo},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    Verdict v = cli_decide(c.text);
    bool good = v.code == c.want && v.secs < 60;
    ok = ok && good;
    if (!detail.empty()) detail += "; ";
    detail += c.label + ": " + verdict_name(v.code) + " in " + fmt_s(v.secs);
    if (v.code == kExitBudget) {
      auto nl = v.err.find('\n');
      detail += " [" + v.err.substr(0, nl) + "]";
    }
  }
  // The binary instance of the same pattern, for reference.
  Verdict k2 = cli_decide("exists x2. (R(x1,x2) & P(x2))");
  detail += "; for reference, k = 2: " + std::string(verdict_name(k2.code)) + " in " + fmt_s(k2.secs);
  return {ok, detail};
}

Outcome fragment_corpus() {
  std::vector<std::string> wrong;
  auto expect = [&](const std::string& label, bool holds) {
    if (!holds) wrong.push_back(label);
  };
  expect("exists y (!R(x,y) & P(y)) in UF1", check_uf1(parse("exists y. (!R(x,y) & P(y))")).member);
  expect("exists x exists y exists z R(x,y,z) in UF1", check_uf1(parse("exists x. exists y. exists z. R(x,y,z)")).member);
  expect("polyadic example in UF1", check_uf1(parse("exists x2. exists x3. (R(x1,x2,x3) & P(x2) & P(x3))")).member);
  Formula eta_com = parse("forall x. forall y. forall z. forall w. (H(x,y) & V(x,z) & H(z,w) -> V(y,w))");
  expect("eta_Com in GF1", check_gf1(eta_com).member);
  expect("eta_Com not in UF1", !check_uf1(eta_com).member);
  expect("eta_H in GF1", check_gf1(parse("forall x. exists y. H(x,y)")).member);
  expect("theta_S in SUF2", check_suf2(parse("forall x. exists y. S(x,y)")).member);
  expect("theta_H in SUF2", check_suf2(parse("forall x1. forall x2. (S(x1,x2) -> forall y. Hplus(x1,x2,y))")).member);
  expect("theta_V in SUF2", check_suf2(parse("forall y1. forall y2. (S(y1,y2) -> forall x. Vplus(x,y1,y2))")).member);
  int sets = 0;
  for (const char* name : {"single", "stripes", "checker"}) {
    TileSet ts = load_tiles(kCorpus + "/tiles/" + name + ".json");
    expect(std::string("Gamma & Psi in GF1 for ") + name,
           check_gf1(conj(grid_axioms_gf1(), tiling_sentence_gf1(ts))).member);
    expect(std::string("Gamma+ & Phi in SUF2 for ") + name,
           check_suf2(conj(grid_axioms_suf2(), tiling_sentence_suf2(ts))).member);
    ++sets;
  }
  std::string detail = "9 example formulas and " + std::to_string(sets) + " tile sets";
  for (const auto& w : wrong) detail += "; wrong: " + w;
  return {wrong.empty(), detail};
}

Outcome larger_models() {
  int checked = 0, bad = 0;
  std::string first_bad;
  for (const auto& e : support::load_corpus(kCorpus + "/uf1")) {
    for (int n = 1; n <= 2; ++n) {
      if (!oracle_model_of_size(e.formula, n)) continue;
      ++checked;
      if (!oracle_model_of_size(e.formula, n + 1)) {
        ++bad;
        if (first_bad.empty()) first_bad = e.name + " at size " + std::to_string(n);
      }
    }
  }
  return {checked > 0 && bad == 0, std::to_string(checked) + " (formula, n) pairs with a model of size n <= 2, " +
                                       std::to_string(bad) + " without one of size n+1" +
                                       (first_bad.empty() ? "" : " (" + first_bad + ")")};
}

Outcome tiling_fidelity() {
  // Every tile over colours {a, b}, and every set of one or two of them.
  std::vector<Tile> tiles;
  for (int m = 0; m < 16; ++m) {
    auto c = [&](int bit) { return std::string(1, (m >> bit) & 1 ? 'b' : 'a'); };
    tiles.push_back({c(0), c(1), c(2), c(3)});
  }
  std::vector<TileSet> sets;
  for (size_t i = 0; i < tiles.size(); ++i) {
    sets.push_back(TileSet{{tiles[i]}});
    for (size_t j = i + 1; j < tiles.size(); ++j) sets.push_back(TileSet{{tiles[i], tiles[j]}});
  }
  for (const char* name : {"single", "stripes"}) sets.push_back(load_tiles(kCorpus + "/tiles/" + name + ".json"));
  long checked = 0, bad = 0;
  for (const TileSet& ts : sets) {
    auto parts = tiling_parts_gf1(ts);
    int k = static_cast<int>(ts.tiles.size());
    for (int code = 0; code < k * k * k * k; ++code) {
      std::vector<int> f(4);
      for (int c = 0, x = code; c < 4; ++c, x /= k) f[static_cast<size_t>(c)] = x % k;
      Structure s = torus_grid(2, 2, f, ts);
      // Cell (i, j) is f[2j + i]; its right and upper neighbours wrap.
      bool th = true, tv = true;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const Tile& t = ts.tiles[static_cast<size_t>(f[static_cast<size_t>(2 * j + i)])];
          th = th && t.R == ts.tiles[static_cast<size_t>(f[static_cast<size_t>(2 * j + 1 - i)])].L;
          tv = tv && t.T == ts.tiles[static_cast<size_t>(f[static_cast<size_t>(2 * (1 - j) + i)])].B;
        }
      bad += model_check(s, {}, parts.psi_h) != th;
      bad += model_check(s, {}, parts.psi_v) != tv;
      ++checked;
    }
  }
  return {bad == 0, std::to_string(sets.size()) + " tile sets, " + std::to_string(checked) + " assignments, " +
                        std::to_string(bad) + " mismatches"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, known;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if ((a == "--only" || a == "--known-failure") && i + 1 < argc) {
      (a == "--only" ? only : known).insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: uf1_acceptance [--only N]... [--known-failure N]...\n";
      return 2;
    }
  }
  std::vector<Criterion> all{
      {1, "hypertorus invariants", hypertorus_invariants},
      {2, "diagram combinatorics", diagram_counts},
      {3, "leq equals semantic entailment", leq_entailment},
      {4, "stage equivalence on the corpus", stage_equivalence},
      {5, "torus model soundness", torus_soundness},
      {6, "inverse model completeness", inverse_completeness},
      {7, "monadic decider vs oracle", mfo_vs_oracle},
      {8, "end-to-end verdicts under the desk profile", end_to_end},
      {9, "fragment classification", fragment_corpus},
      {10, "larger-model property", larger_models},
      {11, "tiling fidelity", tiling_fidelity},
  };
  std::set<int> failed;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail << " ["
              << fmt_s(seconds_since(t0)) << "]" << (!o.pass && known.count(c.id) ? " (known failure)" : "")
              << std::endl;
  }
  int status = 0;
  for (int id : failed)
    if (!known.count(id)) status = 1;
  for (int id : known)
    if ((only.empty() || only.count(id)) && !failed.count(id)) {
      std::cout << "note: criterion " << id << " is listed as a known failure but passed\n";
      status = 1;
    }
  std::cout << (all.size() - (only.empty() ? 0 : all.size() - only.size())) - failed.size() << " passed, "
            << failed.size() << " failed\n";
  return status;
}
