#include "uf1/monadizer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace uf1 {

std::string TorusPoint::str() const {
  return std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
}

Hypertorus::Hypertorus(int n, int l) : n_(n), l_(l) {
  if (n < 2 || l < 2) throw Error("hypertorus needs n >= 2 and l >= 2");
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= l; ++b)
      for (int c = 0; c < 3; ++c) points_.push_back({a, b, c});
}

int Hypertorus::index(const TorusPoint& t) const {
  if (t.a < 1 || t.a > n_ || t.b < 1 || t.b > l_ || t.c < 0 || t.c > 2) throw Error("point outside the torus");
  return ((t.a - 1) * l_ + (t.b - 1)) * 3 + t.c;
}

std::vector<TorusPoint> Hypertorus::good_sequence(const TorusPoint& t1, int j) const {
  if (j < 1 || j > n_) throw Error("good sequence index out of range");
  index(t1);
  std::vector<TorusPoint> out{t1};
  // Later entries all shift the first coordinate by j-1 and the third by 1;
  // the second moves i-1 steps along its cycle.
  for (int i = 2; i <= l_; ++i)
    out.push_back({(t1.a - 1 + j - 1) % n_ + 1, (t1.b - 1 + i - 1) % l_ + 1, (t1.c + 1) % 3});
  return out;
}

std::vector<std::vector<TorusPoint>> Hypertorus::restriction(int j, int k) const {
  if (k < 1 || k > l_) throw Error("restriction length out of range");
  std::vector<std::vector<TorusPoint>> out;
  for (const auto& t : points_) {
    auto s = good_sequence(t, j);
    s.resize(static_cast<size_t>(k));
    out.push_back(std::move(s));
  }
  return out;
}

Hypertorus build_hypertorus(int n, int l) { return Hypertorus(n, l); }

// ---------------------------------------------------------------------------
// Preprocessing

namespace {

bool has_binary_diamond(const Muf& m) {
  for (const auto& s : muf1_sub(m))
    if (s->kind == MKind::Diamond && s->space->arity() == 2) return true;
  return false;
}

Muf tautology(const Muf& r) { return m_not(m_and(r, m_not(r))); }

}  // namespace

Muf preprocess_muf1(const Muf& m) {
  Vocabulary V = muf_vocabulary(m);
  Vocabulary B = V.at_least(2);
  if (B.empty()) {
    std::set<std::string> used;
    for (const auto& s : V.symbols()) used.insert(s.name);
    std::string name = "R0";
    for (int i = 1; used.count(name); ++i) name = "R0_" + std::to_string(i);
    B.add(name, 2);
  }
  for (const auto& s : muf1_sub(m))
    if (s->kind == MKind::Diamond && !(s->space->vocabulary() == B.at_least(s->space->arity())))
      throw Error("diagrams must range over every symbol of arity >= 2");

  auto first = B.symbols().front();
  Muf r = m_atom(first.name, first.arity);
  Muf taut = tautology(r);
  Muf contra = m_and(r, m_not(r));

  std::unordered_map<const MufNode*, Muf> memo;
  std::function<Muf(const Muf&)> go = [&](const Muf& x) -> Muf {
    auto it = memo.find(x.get());
    if (it != memo.end()) return it->second;
    Muf out;
    switch (x->kind) {
      case MKind::Atom: out = x; break;
      case MKind::True: out = taut; break;
      case MKind::False: out = contra; break;
      case MKind::Not: out = m_not(go(x->args[0])); break;
      case MKind::And: out = m_and(go(x->args[0]), go(x->args[1])); break;
      case MKind::Or: out = m_not(m_and(m_not(go(x->args[0])), m_not(go(x->args[1])))); break;
      case MKind::E: out = m_E(go(x->args[0])); break;
      case MKind::Diamond: {
        std::vector<Muf> args;
        for (const auto& a : x->args) args.push_back(go(a));
        out = m_diamond(muf_diagram(x), std::move(args));
        break;
      }
    }
    memo[x.get()] = out;
    return out;
  };
  Muf out = go(m);

  if (!has_binary_diamond(out)) {
    Muf d = m_diamond(Diagram(diagram_space(B, 2), 0), {taut, taut});
    out = m_and(out, tautology(d));
  }
  std::unordered_set<Muf, MufHash, MufEq> present;
  for (const auto& s : muf1_sub(out)) present.insert(s);
  for (const auto& s : B.symbols()) {
    Muf a = m_atom(s.name, s.arity);
    if (!present.count(m_not(a))) out = m_and(out, tautology(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Context

int TranslationContext::index_of(const Muf& m) const {
  auto it = sub_index.find(m);
  if (it == sub_index.end()) throw Error("not a subformula: " + print_muf(m));
  return it->second;
}

Vocabulary TranslationContext::vstar() const {
  Vocabulary v;
  for (size_t i = 0; i < sub.size(); ++i) v.add(p_sub(static_cast<int>(i)), 1);
  for (const auto& t : torus->points()) v.add(p_t(t), 1);
  return v;
}

std::vector<std::vector<TorusPoint>> TranslationContext::t_delta(int k, uint64_t idx) const {
  return torus->restriction(static_cast<int>(idx) + 1, k);
}

std::string TranslationContext::legend() const {
  std::string out;
  for (size_t i = 0; i < sub.size(); ++i) out += p_sub(static_cast<int>(i)) + "\t" + print_muf(sub[i]) + "\n";
  return out;
}

TranslationContext build_context(const Muf& pre, const Budgets& budgets) {
  TranslationContext ctx;
  ctx.psi = pre;
  ctx.V = muf_vocabulary(pre);
  ctx.sub = muf1_sub(pre);
  ctx.M = 0;
  for (size_t i = 0; i < ctx.sub.size(); ++i) {
    ctx.sub_index.emplace(ctx.sub[i], static_cast<int>(i));
    if (ctx.sub[i]->kind != MKind::Diamond) continue;
    ctx.D.merge(ctx.sub[i]->space->vocabulary());
    ctx.M = std::max(ctx.M, ctx.sub[i]->space->arity());
  }
  if (ctx.M < 2 || !has_binary_diamond(pre)) throw Error("context needs a preprocessed formula (no binary diamond)");

  Meter diagrams("diagrams", "build_context", budgets.diagrams);
  ctx.delta.resize(static_cast<size_t>(ctx.M) + 1);
  ctx.diamonds.resize(ctx.delta.size());
  ctx.inverse.resize(ctx.delta.size());
  for (int k = 2; k <= ctx.M; ++k) {
    auto sp = diagram_space(ctx.V, k);
    if (sp->num_atoms() >= 63) throw BudgetExceeded("diagrams", "build_context", budgets.diagrams);
    diagrams.add(sp->count());
    ctx.delta[k] = enumerate_diagrams(ctx.V, k);
    ctx.N = std::max<int>(ctx.N, static_cast<int>(ctx.delta[k].size()));
    ctx.diamonds[k].resize(ctx.delta[k].size());
  }
  uint64_t tsize = 3 * static_cast<uint64_t>(ctx.N) * static_cast<uint64_t>(ctx.M);
  if (tsize > budgets.torus) throw BudgetExceeded("torus", "build_context", budgets.torus);
  ctx.torus = std::make_shared<Hypertorus>(ctx.N, ctx.M);

  for (size_t i = 0; i < ctx.sub.size(); ++i) {
    const auto& s = ctx.sub[i];
    if (s->kind != MKind::Diamond) continue;
    int k = s->space->arity();
    if (!(s->space->vocabulary() == ctx.V.at_least(k))) throw Error("diagram vocabulary differs from V_psi");
    ctx.diamonds[k][s->bits].push_back(static_cast<int>(i));
  }
  for (int k = 2; k <= ctx.M; ++k) {
    ctx.inverse[k].resize(ctx.delta[k].size());
    for (size_t d = 0; d < ctx.delta[k].size(); ++d)
      for (const auto& ip : inverse_projections(ctx.delta[k][d], ctx.M))
        ctx.inverse[k][d].push_back({ip.eta.arity(), ip.eta.index(), ip.f});
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// psi*(x)

namespace {

Formula p(const std::string& name, const std::string& var) { return atom(name, {var}); }

// Conjunction that leaves out trivially true conjuncts.
Formula and_of(const std::vector<Formula>& fs) {
  std::vector<Formula> keep;
  for (const auto& f : fs)
    if (f->kind != Kind::True) keep.push_back(f);
  return conj(keep);
}

std::vector<std::string> xvars(int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

Formula precons(const TranslationContext& ctx, int k, uint64_t idx, const std::vector<std::string>& xs) {
  std::vector<Formula> parts;
  for (int i : ctx.diamonds.at(k).at(idx)) {
    const Muf& d = ctx.sub[static_cast<size_t>(i)];
    std::vector<Formula> pre;
    for (int j = 0; j < k; ++j) pre.push_back(p(ctx.p_sub(ctx.index_of(d->args[j])), xs[j]));
    parts.push_back(implies(conj(pre), p(ctx.p_sub(i), xs[0])));
  }
  return and_of(parts);
}

Formula cons(const TranslationContext& ctx, int k, uint64_t idx, const std::vector<std::string>& xs) {
  std::vector<Formula> parts;
  for (const auto& inv : ctx.inverse.at(k).at(idx)) {
    std::vector<std::string> ys;
    for (int j : inv.f) ys.push_back(xs[j]);
    parts.push_back(precons(ctx, inv.p, inv.eta, ys));
  }
  return and_of(parts);
}

Formula diag(const TranslationContext& ctx, int k, uint64_t idx, const std::vector<std::string>& xs) {
  std::vector<Formula> tuples;
  for (const auto& t : ctx.t_delta(k, idx)) {
    std::vector<Formula> c;
    for (int j = 0; j < k; ++j) c.push_back(p(ctx.p_t(t[j]), xs[j]));
    tuples.push_back(conj(c));
  }
  return and_of({disj(tuples), cons(ctx, k, idx, xs)});
}

StarFormula translate_star(const TranslationContext& ctx, const Budgets& budgets) {
  Meter nodes("formula-nodes", "translate_star", budgets.formula_nodes);
  auto charge = [&](const Formula& f) {
    nodes.add(tree_size(f));
    return f;
  };
  StarFormula out;

  std::vector<Formula> total;
  for (int k = 2; k <= ctx.M; ++k) {
    auto xs = xvars(k);
    std::vector<Formula> alts;
    bool trivial = false;
    for (size_t d = 0; d < ctx.delta[k].size(); ++d) {
      Formula c = cons(ctx, k, d, xs);
      if (c->kind == Kind::True) trivial = true;
      alts.push_back(c);
    }
    if (!trivial) total.push_back(charge(forall(xs, disj(alts))));
  }
  out.total = and_of(total);

  std::vector<Formula> uniq;
  const auto& pts = ctx.torus->points();
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      uniq.push_back(neg(exists("x", conj(p(ctx.p_t(pts[i]), "x"), p(ctx.p_t(pts[j]), "x")))));
  out.uniq = charge(and_of(uniq));

  std::vector<Formula> local;
  for (int k = 2; k <= ctx.M; ++k) {
    for (size_t d = 0; d < ctx.delta[k].size(); ++d) {
      Formula pc = precons(ctx, k, d, std::vector<std::string>(static_cast<size_t>(k), "x"));
      if (pc->kind == Kind::True) continue;
      const Diagram& delta = ctx.delta[k][d];
      std::set<std::string> pos, negs;
      for (size_t a = 0; a < delta.space().num_atoms(); ++a)
        (delta.positive(a) ? pos : negs).insert(delta.space().atom(a).symbol);
      std::vector<Formula> lits;
      for (const auto& r : pos) lits.push_back(p(ctx.p_sub(ctx.index_of(m_atom(r, ctx.V.arity(r)))), "x"));
      for (const auto& r : negs)
        lits.push_back(p(ctx.p_sub(ctx.index_of(m_not(m_atom(r, ctx.V.arity(r))))), "x"));
      local.push_back(charge(forall("x", implies(conj(lits), pc))));
    }
  }
  out.local = and_of(local);

  std::vector<Formula> sub;
  for (size_t i = 0; i < ctx.sub.size(); ++i) {
    const Muf& a = ctx.sub[i];
    auto P = [&](const Muf& m, const std::string& v) { return p(ctx.p_sub(ctx.index_of(m)), v); };
    Formula self = p(ctx.p_sub(static_cast<int>(i)), "x1");
    Formula body;
    switch (a->kind) {
      case MKind::Not: body = neg(P(a->args[0], "x1")); break;
      case MKind::And: body = conj(P(a->args[0], "x1"), P(a->args[1], "x1")); break;
      case MKind::E: body = exists("y", P(a->args[0], "y")); break;
      case MKind::Diamond: {
        int k = a->space->arity();
        auto xs = xvars(k);
        std::vector<Formula> c{diag(ctx, k, a->bits, xs)};
        for (int j = 0; j < k; ++j) c.push_back(P(a->args[j], xs[j]));
        body = exists(std::vector<std::string>(xs.begin() + 1, xs.end()), conj(c));
        break;
      }
      case MKind::Atom: continue;
      default: throw Error("translate_star needs a preprocessed formula, found " + print_muf(a));
    }
    sub.push_back(charge(forall("x1", iff(self, body))));
  }
  out.sub = and_of(sub);

  out.root = p(ctx.p_sub(ctx.index_of(ctx.psi)), "x");
  out.star = and_of({out.total, out.uniq, out.local, out.sub, out.root});
  return out;
}

// ---------------------------------------------------------------------------
// Models

Structure build_torus_model(const Structure& s, const TranslationContext& ctx, const Budgets& budgets) {
  const auto& pts = ctx.torus->points();
  uint64_t size = static_cast<uint64_t>(s.size()) * pts.size();
  if (size > budgets.model_elements) throw BudgetExceeded("model-elements", "build_torus_model", budgets.model_elements);
  // Symbols added by preprocessing only occur in tautologies; leave them empty.
  Structure base = s;
  for (const auto& sym : ctx.V.symbols())
    if (!base.has_symbol(sym.name)) base.add_symbol(sym.name, sym.arity);

  std::vector<std::string> names;
  for (const auto& u : s.domain())
    for (const auto& t : pts) names.push_back(u + "@" + t.str());
  Structure out(names);
  for (const auto& sym : ctx.vstar().symbols()) out.add_symbol(sym.name, 1);
  MufEvaluator ev(base);
  int T = static_cast<int>(pts.size());
  for (size_t i = 0; i < ctx.sub.size(); ++i) {
    const auto& ext = ev.extension(ctx.sub[i]);
    std::string name = ctx.p_sub(static_cast<int>(i));
    for (int u = 0; u < s.size(); ++u)
      if (ext[static_cast<size_t>(u)])
        for (int t = 0; t < T; ++t) out.set(name, {u * T + t});
  }
  for (int u = 0; u < s.size(); ++u)
    for (int t = 0; t < T; ++t) out.set(ctx.p_t(pts[static_cast<size_t>(t)]), {u * T + t});
  return out;
}

namespace {

// Direct evaluation of the formula families over a V*-structure.
class StarView {
 public:
  StarView(const Structure& a, const TranslationContext& ctx) : ctx_(ctx) {
    int n = a.size();
    in_.assign(ctx.sub.size(), std::vector<char>(static_cast<size_t>(n), 0));
    for (size_t i = 0; i < ctx.sub.size(); ++i) {
      std::string name = ctx.p_sub(static_cast<int>(i));
      if (!a.has_symbol(name)) continue;
      for (int u = 0; u < n; ++u) in_[i][static_cast<size_t>(u)] = a.holds(name, {u});
    }
    point_.assign(static_cast<size_t>(n), -1);
    const auto& pts = ctx.torus->points();
    for (size_t t = 0; t < pts.size(); ++t) {
      std::string name = ctx.p_t(pts[t]);
      if (!a.has_symbol(name)) continue;
      for (int u = 0; u < n; ++u)
        if (a.holds(name, {u})) point_[static_cast<size_t>(u)] = static_cast<int>(t);
    }
  }

  bool in(int sub, int u) const { return in_[static_cast<size_t>(sub)][static_cast<size_t>(u)]; }

  bool precons(int k, uint64_t idx, const Tuple& us) const {
    for (int i : ctx_.diamonds[k][idx]) {
      const Muf& d = ctx_.sub[static_cast<size_t>(i)];
      bool pre = true;
      for (int j = 0; j < k && pre; ++j) pre = in(ctx_.index_of(d->args[j]), us[j]);
      if (pre && !in(i, us[0])) return false;
    }
    return true;
  }

  bool cons(int k, uint64_t idx, const Tuple& us) const {
    for (const auto& inv : ctx_.inverse[k][idx]) {
      Tuple vs;
      for (int j : inv.f) vs.push_back(us[j]);
      if (!precons(inv.p, inv.eta, vs)) return false;
    }
    return true;
  }

  bool diag(int k, uint64_t idx, const Tuple& us) const {
    int t0 = point_[static_cast<size_t>(us[0])];
    if (t0 < 0) return false;
    auto seq = ctx_.torus->good_sequence(ctx_.torus->point(t0), static_cast<int>(idx) + 1);
    for (int j = 1; j < k; ++j)
      if (point_[static_cast<size_t>(us[j])] != ctx_.torus->index(seq[j])) return false;
    return cons(k, idx, us);
  }

 private:
  const TranslationContext& ctx_;
  std::vector<std::vector<char>> in_;
  std::vector<int> point_;
};

void for_each_subset(int n, int q, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> c(static_cast<size_t>(q));
  std::iota(c.begin(), c.end(), 0);
  if (q > n) return;
  while (true) {
    fn(c);
    int i = q - 1;
    while (i >= 0 && c[i] == n - q + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < q; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

InverseModel build_inverse_model(const Structure& a, const TranslationContext& ctx, const StarFormula& star) {
  const std::pair<const char*, Formula> parts[] = {
      {"psi_total", star.total}, {"psi_uniq", star.uniq}, {"psi_local", star.local}, {"psi_sub", star.sub}};
  for (const auto& [name, f] : parts)
    if (!model_check(a, {}, f)) throw Error(std::string("inverse model: the structure does not satisfy ") + name);

  InverseModel out;
  Structure& b = out.model;
  b = Structure(a.domain());
  for (const auto& s : ctx.V.symbols()) b.add_symbol(s.name, s.arity);
  StarView view(a, ctx);
  int n = a.size();

  for (const auto& s : ctx.V.symbols()) {
    auto it = ctx.sub_index.find(m_atom(s.name, s.arity));
    if (it == ctx.sub_index.end()) continue;
    for (int u = 0; u < n; ++u)
      if (view.in(it->second, u)) b.set(s.name, Tuple(static_cast<size_t>(s.arity), u));
  }

  for (int q = 2; q <= ctx.M; ++q) {
    const auto& dq = ctx.delta[q];
    auto sp = diagram_space(ctx.V, q);
    for_each_subset(n, q, [&](const std::vector<int>& U) {
      InverseModel::Entry e{2, {}, 0};
      int hits = 0;
      std::vector<int> perm = U;
      do {
        for (size_t d = 0; d < dq.size(); ++d) {
          if (!view.diag(q, d, perm)) continue;
          if (hits++ == 0) e = {1, perm, d};
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (hits > 1) throw Error("inverse model: a subset satisfies two diagram formulas");
      if (hits == 0) {
        e.tuple = U;
        size_t d = 0;
        while (d < dq.size() && !view.cons(q, d, U)) ++d;
        if (d == dq.size()) throw Error("inverse model: no diagram is consistent with a subset");
        e.diagram = d;
      }
      const Diagram& delta = dq[e.diagram];
      for (size_t i = 0; i < sp->num_atoms(); ++i) {
        if (!delta.positive(i)) continue;
        const YAtom& y = sp->atom(i);
        Tuple t;
        for (int p : y.pos) t.push_back(e.tuple[static_cast<size_t>(p)]);
        b.set(y.symbol, t);
      }
      out.types.emplace(U, e);
    });
  }
  return out;
}

}  // namespace uf1
