#include "uf1/normalizer.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace uf1 {

namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

Muf make(MKind k, RelationSymbol sym, std::shared_ptr<const DiagramSpace> space, uint64_t bits,
         std::vector<Muf> args) {
  auto n = std::make_shared<MufNode>();
  n->kind = k;
  n->sym = std::move(sym);
  n->space = std::move(space);
  n->bits = bits;
  n->args = std::move(args);
  size_t h = mix(0x51, static_cast<size_t>(k));
  h = mix(h, std::hash<std::string>{}(n->sym.name));
  h = mix(h, static_cast<size_t>(n->sym.arity));
  if (n->space) h = mix(mix(h, static_cast<size_t>(n->space->arity())), static_cast<size_t>(bits));
  for (const auto& a : n->args) {
    h = mix(h, a->hash);
    n->size += a->size;
  }
  n->hash = h;
  return n;
}

Muf balanced(MKind k, const std::vector<Muf>& ms, size_t lo, size_t hi) {
  if (hi - lo == 1) return ms[lo];
  size_t mid = lo + (hi - lo) / 2;
  return make(k, {}, nullptr, 0, {balanced(k, ms, lo, mid), balanced(k, ms, mid, hi)});
}

}  // namespace

Muf m_atom(const std::string& name, int arity) { return make(MKind::Atom, {name, arity}, nullptr, 0, {}); }
Muf m_top() { return make(MKind::True, {}, nullptr, 0, {}); }
Muf m_bot() { return make(MKind::False, {}, nullptr, 0, {}); }
Muf m_not(Muf a) { return make(MKind::Not, {}, nullptr, 0, {std::move(a)}); }
Muf m_and(Muf a, Muf b) { return make(MKind::And, {}, nullptr, 0, {std::move(a), std::move(b)}); }
Muf m_or(Muf a, Muf b) { return make(MKind::Or, {}, nullptr, 0, {std::move(a), std::move(b)}); }
Muf m_and(const std::vector<Muf>& ms) { return ms.empty() ? m_top() : balanced(MKind::And, ms, 0, ms.size()); }
Muf m_or(const std::vector<Muf>& ms) { return ms.empty() ? m_bot() : balanced(MKind::Or, ms, 0, ms.size()); }
Muf m_E(Muf a) { return make(MKind::E, {}, nullptr, 0, {std::move(a)}); }

Muf m_diamond(const Diagram& d, std::vector<Muf> args) {
  if (static_cast<int>(args.size()) != d.arity())
    throw Error("diamond over a " + std::to_string(d.arity()) + "-ary diagram needs as many arguments");
  return make(MKind::Diamond, {}, d.space_ptr(), d.index(), std::move(args));
}

Diagram muf_diagram(const Muf& m) {
  if (m->kind != MKind::Diamond) throw Error("not a diamond");
  return Diagram(m->space, m->bits);
}

bool muf_equal(const Muf& a, const Muf& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->sym != b->sym || a->bits != b->bits ||
      a->args.size() != b->args.size())
    return false;
  if (a->space != b->space) {
    if (!a->space || !b->space || a->space->arity() != b->space->arity() ||
        !(a->space->vocabulary() == b->space->vocabulary()))
      return false;
  }
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!muf_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string print_muf(const Muf& m) {
  switch (m->kind) {
    case MKind::Atom: return m->sym.name;
    case MKind::True: return "true";
    case MKind::False: return "false";
    case MKind::Not: return "!" + print_muf(m->args[0]);
    case MKind::And: return "(" + print_muf(m->args[0]) + " & " + print_muf(m->args[1]) + ")";
    case MKind::Or: return "(" + print_muf(m->args[0]) + " | " + print_muf(m->args[1]) + ")";
    case MKind::E: return "<E>" + print_muf(m->args[0]);
    case MKind::Diamond: {
      std::string s = "<D " + std::to_string(m->space->arity()) + "#" + std::to_string(m->bits) + ">(";
      for (size_t i = 0; i < m->args.size(); ++i) s += (i ? "," : "") + print_muf(m->args[i]);
      return s + ")";
    }
  }
  return "?";
}

Vocabulary muf_vocabulary(const Muf& m) {
  Vocabulary v;
  for (const auto& s : muf1_sub(m)) {
    if (s->kind == MKind::Atom) v.add(s->sym);
    if (s->kind == MKind::Diamond) v.merge(s->space->vocabulary());
  }
  return v;
}

std::vector<Muf> muf1_sub(const Muf& m) {
  std::vector<Muf> out;
  std::unordered_set<Muf, MufHash, MufEq> seen;
  std::unordered_set<const MufNode*> visited;
  std::function<void(const Muf&)> go = [&](const Muf& x) {
    if (!visited.insert(x.get()).second) return;
    for (const auto& a : x->args) go(a);
    if (seen.insert(x).second) out.push_back(x);
  };
  go(m);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

MufEvaluator::MufEvaluator(const Structure& s) : s_(s) {}

bool MufEvaluator::operator()(int w, const Muf& m) { return extension(m).at(static_cast<size_t>(w)); }

std::optional<Tuple> MufEvaluator::witness(int w, const Muf& m) {
  if (m->kind != MKind::Diamond) throw Error("witnesses exist only for diamonds");
  Diagram d = muf_diagram(m);
  int k = d.arity();
  std::vector<const std::vector<char>*> ext;
  for (const auto& a : m->args) ext.push_back(&extension(a));
  if (!(*ext[0])[static_cast<size_t>(w)]) return std::nullopt;
  const auto& sp = d.space();
  // Literals grouped by the last position they mention, checked as soon as
  // that position is filled.
  std::vector<std::vector<size_t>> by_last(k);
  for (size_t i = 0; i < sp.num_atoms(); ++i) {
    const auto& pos = sp.atom(i).pos;
    by_last[static_cast<size_t>(*std::max_element(pos.begin(), pos.end()))].push_back(i);
  }
  Tuple t(k, 0);
  t[0] = w;
  int n = s_.size();
  auto ok_at = [&](int p) {
    for (size_t i : by_last[p]) {
      const YAtom& a = sp.atom(i);
      Tuple u;
      for (int q : a.pos) u.push_back(t[q]);
      if (s_.holds(a.symbol, u) != d.positive(i)) return false;
    }
    return true;
  };
  std::function<bool(int)> go = [&](int p) -> bool {
    if (p == k) return true;
    for (int e = 0; e < n; ++e) {
      if (!(*ext[p])[static_cast<size_t>(e)]) continue;
      t[p] = e;
      if (ok_at(p) && go(p + 1)) return true;
    }
    return false;
  };
  if (!ok_at(0)) return std::nullopt;
  if (go(1)) return t;
  return std::nullopt;
}

const std::vector<char>& MufEvaluator::extension(const Muf& m) {
  auto it = memo_.find(m.get());
  if (it != memo_.end()) return it->second;
  size_t n = static_cast<size_t>(s_.size());
  std::vector<char> out(n, 0);
  switch (m->kind) {
    case MKind::Atom:
      for (size_t w = 0; w < n; ++w) out[w] = s_.holds(m->sym.name, Tuple(m->sym.arity, static_cast<int>(w)));
      break;
    case MKind::True:
      std::fill(out.begin(), out.end(), 1);
      break;
    case MKind::False:
      break;
    case MKind::Not: {
      const auto& a = extension(m->args[0]);
      for (size_t w = 0; w < n; ++w) out[w] = !a[w];
      break;
    }
    case MKind::And:
    case MKind::Or: {
      const auto& a = extension(m->args[0]);
      const auto& b = extension(m->args[1]);
      for (size_t w = 0; w < n; ++w) out[w] = m->kind == MKind::And ? (a[w] && b[w]) : (a[w] || b[w]);
      break;
    }
    case MKind::E: {
      const auto& a = extension(m->args[0]);
      bool any = std::any_of(a.begin(), a.end(), [](char c) { return c != 0; });
      std::fill(out.begin(), out.end(), any);
      break;
    }
    case MKind::Diamond:
      for (size_t w = 0; w < n; ++w) out[w] = witness(static_cast<int>(w), m).has_value();
      break;
  }
  keep_.push_back(m);
  return memo_.emplace(m.get(), std::move(out)).first->second;
}

bool eval_muf1(const Structure& s, int w, const Muf& m) {
  MufEvaluator ev(s);
  return ev(w, m);
}

sat::Lit ground_muf(Grounder& g, const Muf& m, int w, std::map<std::pair<const MufNode*, int>, sat::Lit>& memo) {
  auto key = std::make_pair(m.get(), w);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  int n = g.size();
  sat::Lit r = g.true_lit();
  switch (m->kind) {
    case MKind::Atom: r = g.atom(m->sym.name, Tuple(m->sym.arity, w)); break;
    case MKind::True: r = g.true_lit(); break;
    case MKind::False: r = g.false_lit(); break;
    case MKind::Not: r = ~ground_muf(g, m->args[0], w, memo); break;
    case MKind::And:
      r = g.mk_and({ground_muf(g, m->args[0], w, memo), ground_muf(g, m->args[1], w, memo)});
      break;
    case MKind::Or:
      r = g.mk_or({ground_muf(g, m->args[0], w, memo), ground_muf(g, m->args[1], w, memo)});
      break;
    case MKind::E: {
      std::vector<sat::Lit> ls;
      for (int u = 0; u < n; ++u) ls.push_back(ground_muf(g, m->args[0], u, memo));
      r = g.mk_or(ls);
      break;
    }
    case MKind::Diamond: {
      Diagram d = muf_diagram(m);
      int k = d.arity();
      const auto& sp = d.space();
      std::vector<sat::Lit> options;
      Tuple t(k, 0);
      t[0] = w;
      for (;;) {
        std::vector<sat::Lit> parts;
        for (size_t i = 0; i < sp.num_atoms(); ++i) {
          Tuple u;
          for (int q : sp.atom(i).pos) u.push_back(t[q]);
          sat::Lit a = g.atom(sp.atom(i).symbol, u);
          parts.push_back(d.positive(i) ? a : ~a);
        }
        for (int p = 0; p < k; ++p) parts.push_back(ground_muf(g, m->args[p], t[p], memo));
        options.push_back(g.mk_and(parts));
        int p = 1;
        while (p < k && ++t[p] == n) t[p++] = 0;
        if (p == k) break;
      }
      r = g.mk_or(options);
      break;
    }
  }
  memo.emplace(key, r);
  return r;
}

// ---------------------------------------------------------------------------
// UF1 -> DUF1

namespace {

bool high(const Formula& a) { return a->kind == Kind::Atom && atom_arity_class(a) >= 2; }

class Duf1Translator {
 public:
  Duf1Translator(const Vocabulary& tau, const Budgets& b)
      : tau_(tau.at_least(2)), budgets_(b), nodes_("formula-nodes", "to_duf1", b.formula_nodes) {}

  Formula tr(const Formula& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    Formula r;
    switch (f->kind) {
      case Kind::Atom:
        if (high(f)) throw Error("atom " + print(f) + " outside a quantifier block");
        r = f;
        break;
      case Kind::True:
      case Kind::False:
        r = f;
        break;
      case Kind::Not: r = neg(tr(f->a)); break;
      case Kind::And: r = conj(tr(f->a), tr(f->b)); break;
      case Kind::Or: r = disj(tr(f->a), tr(f->b)); break;
      case Kind::Implies: r = implies(tr(f->a), tr(f->b)); break;
      case Kind::Iff: r = iff(tr(f->a), tr(f->b)); break;
      case Kind::Exists:
      case Kind::Forall: r = block(f); break;
    }
    nodes_.add(1);
    memo_.emplace(f.get(), r);
    return r;
  }

 private:
  // Signed unit: index into units_ times two, plus one when negated.
  using Cube = std::vector<int>;

  int unit_id(const Formula& u) {
    auto it = unit_ids_.find(u);
    if (it != unit_ids_.end()) return it->second;
    int id = static_cast<int>(units_.size());
    units_.push_back(u);
    unit_fv_.push_back(free_variables(u));
    unit_ids_.emplace(u, id);
    return id;
  }

  static bool merge(const Cube& a, const Cube& b, Cube& out) {
    out.clear();
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (size_t i = 1; i < out.size(); ++i)
      if ((out[i] >> 1) == (out[i - 1] >> 1)) return false;
    return true;
  }

  std::vector<Cube> product(const std::vector<Cube>& x, const std::vector<Cube>& y) {
    std::set<Cube> out;
    Cube c;
    for (const auto& a : x)
      for (const auto& b : y)
        if (merge(a, b, c)) {
          nodes_.add(c.size() + 1);
          out.insert(c);
        }
    return {out.begin(), out.end()};
  }

  static std::vector<Cube> sum(std::vector<Cube> x, const std::vector<Cube>& y) {
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
  }

  // DNF of f (or of its negation) over units and higher-arity atoms.
  std::vector<Cube> dnf(const Formula& f, bool pos) {
    switch (f->kind) {
      case Kind::True: return pos ? std::vector<Cube>{Cube{}} : std::vector<Cube>{};
      case Kind::False: return pos ? std::vector<Cube>{} : std::vector<Cube>{Cube{}};
      case Kind::Not: return dnf(f->a, !pos);
      case Kind::And:
        return pos ? product(dnf(f->a, true), dnf(f->b, true)) : sum(dnf(f->a, false), dnf(f->b, false));
      case Kind::Or:
        return pos ? sum(dnf(f->a, true), dnf(f->b, true)) : product(dnf(f->a, false), dnf(f->b, false));
      case Kind::Implies:
        return pos ? sum(dnf(f->a, false), dnf(f->b, true)) : product(dnf(f->a, true), dnf(f->b, false));
      case Kind::Iff: {
        auto both = product(dnf(f->a, true), dnf(f->b, pos));
        return sum(both, product(dnf(f->a, false), dnf(f->b, !pos)));
      }
      default: {
        nodes_.add(1);
        return {Cube{2 * unit_id(f) + (pos ? 0 : 1)}};
      }
    }
  }

  Formula literal(int l) const { return (l & 1) ? neg(units_[l >> 1]) : units_[l >> 1]; }

  Formula block(const Formula& f) {
    Block b = collect_block(f);
    bool universal = b.kind == Kind::Forall;
    // Leaves other than higher-arity atoms are translated first; the matrix
    // is then a Boolean combination of those results and uniform atoms.
    Formula m = rebuild(b.matrix);
    if (universal) m = neg(m);
    std::set<std::string> outside = free_variables(f);
    std::vector<Formula> disjuncts;
    for (const Cube& c : dnf(m, true)) {
      Formula d = cube(c, b.vars, outside);
      if (d->kind != Kind::False) disjuncts.push_back(d);
    }
    Formula r = disj(disjuncts);
    return universal ? neg(r) : r;
  }

  Formula rebuild(const Formula& g) {
    if (is_boolean(g)) {
      Formula a = rebuild(g->a);
      switch (g->kind) {
        case Kind::Not: return neg(a);
        case Kind::And: return conj(a, rebuild(g->b));
        case Kind::Or: return disj(a, rebuild(g->b));
        case Kind::Implies: return implies(a, rebuild(g->b));
        default: return iff(a, rebuild(g->b));
      }
    }
    return high(g) ? g : tr(g);
  }

  Formula cube(const Cube& c, const std::vector<std::string>& bound, const std::set<std::string>& outside) {
    std::vector<Formula> alpha, beta;
    std::map<std::string, std::vector<Formula>> psi;
    std::set<std::string> V;
    for (int l : c) {
      const Formula& u = units_[l >> 1];
      if (high(u)) {
        alpha.push_back(literal(l));
        auto vs = atom_vars(u);
        V.insert(vs.begin(), vs.end());
        continue;
      }
      const auto& fv = unit_fv_[l >> 1];
      if (fv.empty()) beta.push_back(literal(l));
      else if (fv.size() == 1) psi[*fv.begin()].push_back(literal(l));
      else throw Error("internal: unit with several free variables: " + print(u));
    }
    std::vector<Formula> parts;
    std::vector<std::string> zs;  // diagram variables, z1 first
    if (!alpha.empty()) {
      for (const auto& v : V)
        if (outside.count(v)) zs.push_back(v);
      if (zs.size() > 1) throw Error("internal: uniform atoms with two outside variables");
      for (const auto& v : bound)
        if (V.count(v)) zs.push_back(v);
      Formula g = diagrams(alpha, zs, psi, outside.count(zs[0]) != 0);
      if (g->kind == Kind::False) return g;
      parts.push_back(g);
    }
    std::set<std::string> in_diagram(zs.begin(), zs.end());
    for (const auto& v : bound)
      if (!in_diagram.count(v) && psi.count(v)) parts.push_back(exists(v, conj(psi[v])));
    for (auto& [v, fs] : psi)
      if (!in_diagram.count(v) && outside.count(v)) parts.push_back(conj(fs));
    parts.insert(parts.end(), beta.begin(), beta.end());
    return conj(parts);
  }

  // exists zs[1..] (or all of zs when z1 is bound) over every full diagram
  // extending alpha, each with the per-variable conjunctions inside.
  Formula diagrams(const std::vector<Formula>& alpha, const std::vector<std::string>& zs,
                   std::map<std::string, std::vector<Formula>>& psi, bool z1_free) {
    int m = static_cast<int>(zs.size());
    auto sp = diagram_space(tau_, m);
    std::map<std::string, int> pos;
    for (int i = 0; i < m; ++i) pos[zs[i]] = i;
    std::vector<int> fixed(sp->num_atoms(), -1);
    for (const auto& l : alpha) {
      bool positive = l->kind == Kind::Atom;
      const Formula& a = positive ? l : l->a;
      YAtom y{a->name, {}};
      for (const auto& arg : a->args) y.pos.push_back(pos.at(arg));
      int i = sp->find(y);
      if (i < 0) throw Error("internal: atom " + print(a) + " outside the diagram space");
      if (fixed[i] >= 0 && fixed[i] != static_cast<int>(positive)) return bot();
      fixed[i] = positive;
    }
    std::vector<size_t> open;
    uint64_t base = 0;
    for (size_t i = 0; i < fixed.size(); ++i) {
      if (fixed[i] < 0) open.push_back(i);
      else if (fixed[i]) base |= uint64_t{1} << i;
    }
    if (open.size() >= 63 || (uint64_t{1} << open.size()) > budgets_.diagrams)
      throw BudgetExceeded("diagrams", "to_duf1", budgets_.diagrams);
    std::vector<Formula> rest;
    for (const auto& z : zs)
      if (psi.count(z)) {
        auto& fs = psi[z];
        rest.insert(rest.end(), fs.begin(), fs.end());
      }
    if (rest.empty()) rest.push_back(top());
    std::vector<std::string> quantified(zs.begin() + (z1_free ? 1 : 0), zs.end());
    std::vector<Formula> out;
    for (uint64_t choice = 0; choice < (uint64_t{1} << open.size()); ++choice) {
      uint64_t bits = base;
      for (size_t j = 0; j < open.size(); ++j)
        if ((choice >> j) & 1) bits |= uint64_t{1} << open[j];
      Diagram d(sp, bits, zs);
      std::vector<Formula> body = d.literals();
      body.insert(body.end(), rest.begin(), rest.end());
      nodes_.add(body.size() + zs.size());
      out.push_back(exists(quantified, conj(body)));
    }
    return disj(out);
  }

  Vocabulary tau_;
  Budgets budgets_;
  Meter nodes_;
  std::unordered_map<const Node*, Formula> memo_;
  std::vector<Formula> units_;
  std::vector<std::set<std::string>> unit_fv_;
  std::unordered_map<Formula, int, FormulaHash, FormulaEq> unit_ids_;
};

// One reading of an existential chain under rule (iii): y1 free, y2..yk
// bound, a full diagram over y1..yk and the remaining conjuncts.
struct DiamondParse {
  std::vector<std::string> vars;  // y1..yk
  Diagram delta;
  std::vector<Formula> rest;
};

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f->kind == Kind::And) {
    flatten_and(f->a, out);
    flatten_and(f->b, out);
  } else {
    out.push_back(f);
  }
}

bool high_literal(const Formula& f) {
  return high(f) || (f->kind == Kind::Not && high(f->a));
}

class Duf1Checker {
 public:
  explicit Duf1Checker(const Vocabulary& tau) : tau_(tau.at_least(2)) {}

  MembershipReport check(const Formula& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    MembershipReport r = compute(f);
    memo_.emplace(f.get(), r);
    return r;
  }

  // Rule (iv) applies: the body has no free variable besides the bound one.
  bool single(const Formula& f) {
    auto fv = free_variables(f->a);
    fv.erase(f->name);
    return fv.empty();
  }

  // The rule (iii) reading of an existential chain, with the first failure
  // message when there is none.
  std::optional<DiamondParse> diamond(const Formula& f, MembershipReport* why) {
    std::vector<std::string> bound;
    Formula g = f;
    MembershipReport first;
    bool have_first = false;
    auto note = [&](MembershipReport r) {
      if (!have_first) {
        first = std::move(r);
        have_first = true;
      }
    };
    while (g->kind == Kind::Exists &&
           std::find(bound.begin(), bound.end(), g->name) == bound.end()) {
      bound.push_back(g->name);
      g = g->a;
      std::vector<Formula> conjuncts, lits, rest;
      flatten_and(g, conjuncts);
      std::set<std::string> W;
      for (const auto& c : conjuncts) {
        if (high_literal(c)) {
          lits.push_back(c);
          auto vs = atom_vars(c->kind == Kind::Not ? c->a : c);
          W.insert(vs.begin(), vs.end());
        } else {
          rest.push_back(c);
        }
      }
      if (lits.empty()) continue;
      std::vector<std::string> ys;
      for (const auto& v : W)
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) ys.push_back(v);
      if (ys.size() != 1 || W.size() != bound.size() + 1) {
        note(fail(f, "duf1.iii.vars",
                  "diagram literals must mention the bound variables and exactly one free variable"));
        continue;
      }
      ys.insert(ys.end(), bound.begin(), bound.end());
      auto d = diagram_from_literals(tau_, ys, lits);
      if (!d) {
        note(fail(f, "duf1.iii.diagram",
                  "literals over " + std::to_string(ys.size()) + " variables do not form a full diagram over " +
                      tau_.str()));
        continue;
      }
      if (rest.empty()) {
        note(fail(f, "duf1.iii.empty", "the conjunction next to the diagram is empty"));
        continue;
      }
      std::set<std::string> Y(ys.begin(), ys.end());
      MembershipReport bad;
      for (const auto& u : rest) {
        auto fv = free_variables(u);
        if (fv.size() > 1) {
          bad = fail(u, "duf1.iii.unary", "conjunct next to a diagram has more than one free variable");
          break;
        }
        if (!fv.empty() && !Y.count(*fv.begin())) {
          bad = fail(u, "duf1.iii.vars", "conjunct has a free variable outside the diagram's variables");
          break;
        }
        MembershipReport r = check(u);
        if (!r.member) {
          bad = r;
          break;
        }
      }
      if (!bad.member) {
        note(bad);
        continue;
      }
      return DiamondParse{ys, *d, rest};
    }
    if (why) {
      *why = have_first ? first
                        : fail(f, "duf1.iii.diagram", "existential block without a diagram or a single free variable");
    }
    return std::nullopt;
  }

 private:
  static MembershipReport fail(const Formula& at, std::string rule, std::string msg) {
    MembershipReport r;
    r.member = false;
    r.blame = at;
    r.rule = std::move(rule);
    r.message = std::move(msg);
    return r;
  }

  MembershipReport compute(const Formula& f) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
        return {};
      case Kind::Atom:
        if (!high(f)) return {};
        return fail(f, "duf1.i.atom", "atom with several distinct variables outside a diagram");
      case Kind::Exists:
      case Kind::Forall: {
        if (single(f)) {
          MembershipReport r = check(f->a);
          if (r.member || f->kind == Kind::Forall) return r;
        }
        if (f->kind == Kind::Forall)
          return fail(f, "duf1.iv.free", "universal quantifier over a formula with other free variables");
        MembershipReport why;
        if (diamond(f, &why)) return {};
        return why;
      }
      default: {
        MembershipReport a = check(f->a);
        if (!a.member) return a;
        if (f->b) return check(f->b);
        return a;
      }
    }
  }

  Vocabulary tau_;
  std::unordered_map<const Node*, MembershipReport> memo_;
};

class Muf1Translator {
 public:
  explicit Muf1Translator(Duf1Checker& c) : check_(c) {}

  Muf tr(const Formula& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    Muf r;
    switch (f->kind) {
      case Kind::Atom: r = m_atom(f->name, static_cast<int>(f->args.size())); break;
      case Kind::True: r = m_top(); break;
      case Kind::False: r = m_bot(); break;
      case Kind::Not: r = m_not(tr(f->a)); break;
      case Kind::And: r = m_and(tr(f->a), tr(f->b)); break;
      case Kind::Or: r = m_or(tr(f->a), tr(f->b)); break;
      case Kind::Implies: r = m_or(m_not(tr(f->a)), tr(f->b)); break;
      case Kind::Iff: {
        Muf a = tr(f->a), b = tr(f->b);
        r = m_or(m_and(a, b), m_and(m_not(a), m_not(b)));
        break;
      }
      case Kind::Forall: r = m_not(m_E(m_not(tr(f->a)))); break;
      case Kind::Exists: {
        if (check_.single(f) && check_.check(f->a).member) {
          r = m_E(tr(f->a));
          break;
        }
        auto p = check_.diamond(f, nullptr);
        if (!p) throw Error("internal: no DUF1 reading for " + print(f));
        std::map<std::string, std::vector<Muf>> per_var;
        std::vector<Muf> closed;
        for (const auto& u : p->rest) {
          auto fv = free_variables(u);
          if (fv.empty()) closed.push_back(tr(u));
          else per_var[*fv.begin()].push_back(tr(u));
        }
        std::vector<Muf> args;
        for (const auto& y : p->vars) args.push_back(per_var.count(y) ? m_and(per_var[y]) : m_top());
        Diagram std_delta = p->delta.with_vars(standard_vars(p->delta.arity()));
        r = m_diamond(std_delta, std::move(args));
        if (!closed.empty()) r = m_and(r, m_and(closed));
        break;
      }
    }
    memo_.emplace(f.get(), r);
    return r;
  }

 private:
  Duf1Checker& check_;
  std::unordered_map<const Node*, Muf> memo_;
};

}  // namespace

Formula to_duf1(const Formula& f, const Budgets& budgets) {
  MembershipReport r = check_uf1(f);
  if (!r.member) throw FragmentError("UF1", r);
  Duf1Translator t(vocabulary_of(f), budgets);
  return t.tr(f);
}

MembershipReport check_duf1(const Formula& f, const Vocabulary* vocab) {
  Duf1Checker c(vocab ? *vocab : vocabulary_of(f));
  return c.check(f);
}

Muf to_muf1(const Formula& f, std::optional<std::string> free_var, const Vocabulary* vocab) {
  auto fv = free_variables(f);
  if (fv.size() > 1) throw Error("MUF1 translation needs at most one free variable");
  if (free_var && !fv.empty() && *fv.begin() != *free_var)
    throw Error("free variable " + *fv.begin() + " is not " + *free_var);
  Duf1Checker c(vocab ? *vocab : vocabulary_of(f));
  MembershipReport r = c.check(f);
  if (!r.member) throw FragmentError("DUF1", r);
  Muf1Translator t(c);
  return t.tr(f);
}

}  // namespace uf1
