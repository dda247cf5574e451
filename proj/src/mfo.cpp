#include "uf1/mfo.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "uf1/sat.hpp"

namespace uf1 {

using SNode = Skeleton::Node;

std::string LiteralCube::str() const {
  std::string out = "E_{";
  bool first = true;
  for (const auto& [p, s] : lits) {
    if (!first) out += ",";
    first = false;
    out += p + (s ? "+" : "-");
  }
  return out + "}";
}

std::string Skeleton::atom_name(int i) const {
  const auto& a = atoms[static_cast<size_t>(i)];
  if (a.cube) return a.cube->str();
  return "E[" + print(a.body) + "]";
}

std::string Skeleton::print(int id) const {
  const SNode& n = nodes[static_cast<size_t>(id)];
  switch (n.op) {
    case SNode::True: return "true";
    case SNode::False: return "false";
    case SNode::Pred: return predicates[n.pred] + "(" + variables[n.var] + ")";
    case SNode::Atom: return atom_name(n.var);
    case SNode::Not: return "!" + print(n.a);
    case SNode::And: return "(" + print(n.a) + " & " + print(n.b) + ")";
    case SNode::Or: return "(" + print(n.a) + " | " + print(n.b) + ")";
    case SNode::Iff: return "(" + print(n.a) + " <-> " + print(n.b) + ")";
  }
  return "?";
}

namespace {

struct Key {
  int op, a, b, pred, var;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = static_cast<size_t>(k.op);
    for (int x : {k.a, k.b, k.pred, k.var}) h = h * 1000003u ^ static_cast<size_t>(x + 7);
    return h;
  }
};

class Builder {
 public:
  Builder(Skeleton& sk, const Budgets& b)
      : sk_(sk),
        nodes_("formula-nodes", "miniscope", b.formula_nodes),
        atoms_("skeleton-atoms", "miniscope", b.skeleton_atoms) {
    sk_.variables.push_back("_");
    mk({SNode::True});
    mk({SNode::False});
  }

  static constexpr int T = 0, F = 1;

  int mk(SNode n) {
    Key k{n.op, n.a, n.b, n.pred, n.var};
    auto it = cons_.find(k);
    if (it != cons_.end()) return it->second;
    nodes_.add();
    int id = static_cast<int>(sk_.nodes.size());
    sk_.nodes.push_back(n);
    cons_.emplace(k, id);
    return id;
  }
  const SNode& at(int id) const { return sk_.nodes[static_cast<size_t>(id)]; }

  int pred(const std::string& p, const std::string& v) {
    auto [pi, fresh] = pred_ix_.emplace(p, static_cast<int>(sk_.predicates.size()));
    if (fresh) sk_.predicates.push_back(p);
    return mk({SNode::Pred, -1, -1, pi->second, var(v)});
  }
  int var(const std::string& v) {
    auto [vi, fresh] = var_ix_.emplace(v, static_cast<int>(sk_.variables.size()));
    if (fresh) sk_.variables.push_back(v);
    return vi->second;
  }

  int neg(int a) {
    if (a == T) return F;
    if (a == F) return T;
    if (at(a).op == SNode::Not) return at(a).a;
    return mk({SNode::Not, a});
  }
  bool complementary(int a, int b) const {
    return (at(a).op == SNode::Not && at(a).a == b) || (at(b).op == SNode::Not && at(b).a == a);
  }
  int conj(int a, int b) {
    if (a == F || b == F || complementary(a, b)) return F;
    if (a == T || a == b) return b;
    if (b == T) return a;
    if (a > b) std::swap(a, b);
    return mk({SNode::And, a, b});
  }
  int disj(int a, int b) {
    if (a == T || b == T || complementary(a, b)) return T;
    if (a == F || a == b) return b;
    if (b == F) return a;
    if (a > b) std::swap(a, b);
    return mk({SNode::Or, a, b});
  }
  int iff(int a, int b) {
    if (a == T) return b;
    if (b == T) return a;
    if (a == F) return neg(b);
    if (b == F) return neg(a);
    if (a == b) return T;
    if (complementary(a, b)) return F;
    if (a > b) std::swap(a, b);
    return mk({SNode::Iff, a, b});
  }

  const std::vector<int>& vars(int id) {
    if (static_cast<size_t>(id) < vars_.size() && vars_done_[static_cast<size_t>(id)]) return vars_[static_cast<size_t>(id)];
    std::vector<int> out;
    const SNode n = at(id);
    if (n.op == SNode::Pred) out.push_back(n.var);
    for (int c : {n.a, n.b}) {
      if (c < 0) continue;
      const auto& cv = vars(c);
      std::vector<int> merged;
      std::set_union(out.begin(), out.end(), cv.begin(), cv.end(), std::back_inserter(merged));
      out.swap(merged);
    }
    if (vars_.size() <= static_cast<size_t>(id)) {
      vars_.resize(sk_.nodes.size());
      vars_done_.resize(sk_.nodes.size(), 0);
    }
    vars_[static_cast<size_t>(id)] = std::move(out);
    vars_done_[static_cast<size_t>(id)] = 1;
    return vars_[static_cast<size_t>(id)];
  }
  bool mentions(int id, int v) {
    const auto& vs = vars(id);
    return std::binary_search(vs.begin(), vs.end(), v);
  }

  // Negation normal form; Iff stays, its negation moves onto the right side.
  int nnf(int id, bool pol) {
    auto key = std::make_pair(id, pol);
    auto it = nnf_memo_.find(key);
    if (it != nnf_memo_.end()) return it->second;
    const SNode n = at(id);
    int out = id;
    switch (n.op) {
      case SNode::True:
      case SNode::False:
      case SNode::Pred:
      case SNode::Atom: out = pol ? id : neg(id); break;
      case SNode::Not: out = nnf(n.a, !pol); break;
      case SNode::And: out = pol ? conj(nnf(n.a, true), nnf(n.b, true)) : disj(nnf(n.a, false), nnf(n.b, false)); break;
      case SNode::Or: out = pol ? disj(nnf(n.a, true), nnf(n.b, true)) : conj(nnf(n.a, false), nnf(n.b, false)); break;
      case SNode::Iff: out = iff(nnf(n.a, true), nnf(n.b, pol)); break;
    }
    nnf_memo_[key] = out;
    return out;
  }

  int rename(int id, int from, int to, std::unordered_map<int, int>& memo) {
    if (!mentions(id, from)) return id;
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const SNode n = at(id);
    int out;
    switch (n.op) {
      case SNode::Pred: out = mk({SNode::Pred, -1, -1, n.pred, to}); break;
      case SNode::Not: out = neg(rename(n.a, from, to, memo)); break;
      case SNode::And: out = conj(rename(n.a, from, to, memo), rename(n.b, from, to, memo)); break;
      case SNode::Or: out = disj(rename(n.a, from, to, memo), rename(n.b, from, to, memo)); break;
      case SNode::Iff: out = iff(rename(n.a, from, to, memo), rename(n.b, from, to, memo)); break;
      default: out = id;
    }
    memo[id] = out;
    return out;
  }

  std::optional<LiteralCube> cube_of(int body) {
    LiteralCube c;
    std::function<bool(int)> go = [&](int id) {
      const SNode& n = at(id);
      if (n.op == SNode::True) return true;
      if (n.op == SNode::And) return go(n.a) && go(n.b);
      bool s = true;
      int p = id;
      if (n.op == SNode::Not) {
        s = false;
        p = n.a;
      }
      if (at(p).op != SNode::Pred) return false;
      c.lits[sk_.predicates[at(p).pred]] = s;
      return true;
    };
    if (!go(body)) return std::nullopt;
    return c;
  }

  // Witness atom for "some element satisfies c", c mentioning only v.
  int witness(int c, int v) {
    if (c == T || c == F) return c;
    std::unordered_map<int, int> memo;
    int body = nnf(rename(c, v, 0, memo), true);
    if (body == T || body == F) return body;
    auto it = atom_ix_.find(body);
    if (it == atom_ix_.end()) {
      atoms_.add();
      it = atom_ix_.emplace(body, static_cast<int>(sk_.atoms.size())).first;
      sk_.atoms.push_back({body, cube_of(body)});
    }
    return mk({SNode::Atom, -1, -1, -1, it->second});
  }

  using Terms = std::vector<std::pair<int, int>>;  // (rest, part over v)

  int disj_all(const std::vector<int>& xs, size_t lo, size_t hi) {
    if (hi - lo == 1) return xs[lo];
    size_t mid = lo + (hi - lo) / 2;
    return disj(disj_all(xs, lo, mid), disj_all(xs, mid, hi));
  }

  Terms merge(const Terms& ts) {
    std::map<int, std::vector<int>> by_x;
    for (const auto& [r, x] : ts)
      if (r != F && x != F) by_x[x].push_back(r);
    Terms out;
    for (const auto& [x, rs] : by_x) out.push_back({disj_all(rs, 0, rs.size()), x});
    nodes_.add(out.size());
    return out;
  }
  Terms product(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& [r1, x1] : a)
      for (const auto& [r2, x2] : b) {
        out.push_back({conj(r1, r2), conj(x1, x2)});
        nodes_.add();
      }
    return merge(out);
  }

  // Operands of a maximal run of op below c.
  void operands(int c, SNode::Op op, std::vector<int>& out) {
    std::vector<int> todo{c};
    while (!todo.empty()) {
      int id = todo.back();
      todo.pop_back();
      if (at(id).op == op) {
        todo.push_back(at(id).b);
        todo.push_back(at(id).a);
      } else {
        out.push_back(id);
      }
    }
  }

  // c (or its negation) as a disjunction of (rest & part over v).
  Terms sep(int c, int v, bool pol, std::map<std::pair<int, bool>, Terms>& memo) {
    if (!mentions(c, v)) return {{pol ? c : neg(c), T}};
    if (vars(c).size() == 1) return {{T, pol ? c : neg(c)}};
    auto key = std::make_pair(c, pol);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const SNode n = at(c);
    Terms out;
    switch (n.op) {
      case SNode::Not: out = sep(n.a, v, !pol, memo); break;
      case SNode::And:
      case SNode::Or: {
        std::vector<int> ops;
        operands(c, n.op, ops);
        if ((n.op == SNode::Or) == pol) {
          Terms all;
          for (int o : ops) {
            Terms t = sep(o, v, pol, memo);
            all.insert(all.end(), t.begin(), t.end());
          }
          out = merge(all);
        } else {
          // Operands free of v collapse into one rest before multiplying.
          int rest = T;
          out = {{T, T}};
          for (int o : ops) {
            if (!mentions(o, v)) rest = conj(rest, pol ? o : neg(o));
            else out = product(out, sep(o, v, pol, memo));
          }
          for (auto& t : out) t.first = conj(rest, t.first);
          out = merge(out);
        }
        break;
      }
      case SNode::Iff: {
        Terms t = product(sep(n.a, v, true, memo), sep(n.b, v, pol, memo));
        Terms u = product(sep(n.a, v, false, memo), sep(n.b, v, !pol, memo));
        t.insert(t.end(), u.begin(), u.end());
        out = merge(t);
        break;
      }
      default: throw Error("internal: unexpected condition in separation");
    }
    memo[key] = out;
    return out;
  }

  void flatten_and(int c, std::vector<int>& out) {
    if (at(c).op == SNode::And) {
      flatten_and(at(c).a, out);
      flatten_and(at(c).b, out);
    } else {
      out.push_back(c);
    }
  }

  // Exists v. c, without v.
  int quantify(int v, int c) {
    if (!mentions(c, v)) return c;
    const SNode n = at(c);
    if (n.op == SNode::Or) return disj(quantify(v, n.a), quantify(v, n.b));
    if (n.op == SNode::And) {
      std::vector<int> parts;
      flatten_and(c, parts);
      int rest = T, bound = T;
      for (int p : parts) (mentions(p, v) ? bound : rest) = conj(mentions(p, v) ? bound : rest, p);
      if (rest != T) return conj(rest, quantify(v, bound));
    }
    if (vars(c).size() == 1) return witness(c, v);
    std::map<std::pair<int, bool>, Terms> memo;
    std::vector<int> ds;
    for (const auto& [r, x] : sep(c, v, true, memo)) ds.push_back(conj(r, witness(x, v)));
    return ds.empty() ? F : disj_all(ds, 0, ds.size());
  }

  int elim(const Formula& f) {
    switch (f->kind) {
      case Kind::Atom:
        if (f->args.size() != 1) throw Error("not monadic: " + print(f));
        return pred(f->name, f->args[0]);
      case Kind::True: return T;
      case Kind::False: return F;
      case Kind::Not: return neg(elim(f->a));
      case Kind::And: return conj(elim(f->a), elim(f->b));
      case Kind::Or: return disj(elim(f->a), elim(f->b));
      case Kind::Implies: return disj(neg(elim(f->a)), elim(f->b));
      case Kind::Iff: return iff(elim(f->a), elim(f->b));
      case Kind::Exists: return quantify(var(f->name), nnf(elim(f->a), true));
      case Kind::Forall: return neg(quantify(var(f->name), nnf(elim(f->a), false)));
    }
    throw Error("internal: unknown formula kind");
  }

 private:
  Skeleton& sk_;
  Meter nodes_, atoms_;
  std::unordered_map<Key, int, KeyHash> cons_;
  std::map<std::string, int> pred_ix_, var_ix_;
  std::map<int, int> atom_ix_;
  std::vector<std::vector<int>> vars_;
  std::vector<char> vars_done_;
  std::map<std::pair<int, bool>, int> nnf_memo_;
};

Formula closure(const Formula& f) {
  auto fv = free_variables(f);
  if (fv.size() > 1) throw Error("monadic decision needs at most one free variable");
  return fv.empty() ? f : exists(*fv.begin(), f);
}

// Value of a condition given values for predicates (of one element) and atoms.
bool value(const Skeleton& sk, int id, const std::function<bool(int)>& pred, const std::vector<char>& atoms) {
  const SNode& n = sk.nodes[static_cast<size_t>(id)];
  switch (n.op) {
    case SNode::True: return true;
    case SNode::False: return false;
    case SNode::Pred: return pred(n.pred);
    case SNode::Atom: return atoms[static_cast<size_t>(n.var)];
    case SNode::Not: return !value(sk, n.a, pred, atoms);
    case SNode::And: return value(sk, n.a, pred, atoms) && value(sk, n.b, pred, atoms);
    case SNode::Or: return value(sk, n.a, pred, atoms) || value(sk, n.b, pred, atoms);
    case SNode::Iff: return value(sk, n.a, pred, atoms) == value(sk, n.b, pred, atoms);
  }
  return false;
}

// Tseitin encoding of skeleton conditions into one solver.
class Encoder {
 public:
  Encoder(sat::Solver& s, std::function<sat::Lit(const SNode&)> leaf) : s_(s), leaf_(std::move(leaf)) {
    true_ = sat::mk_lit(s_.new_var());
    s_.add_clause({true_});
  }

  sat::Lit operator()(const Skeleton& sk, int id) {
    auto it = memo_.find(id);
    if (it != memo_.end()) return it->second;
    const SNode& n = sk.nodes[static_cast<size_t>(id)];
    sat::Lit out;
    switch (n.op) {
      case SNode::True: out = true_; break;
      case SNode::False: out = ~true_; break;
      case SNode::Pred:
      case SNode::Atom: out = leaf_(n); break;
      case SNode::Not: out = ~(*this)(sk, n.a); break;
      case SNode::And:
      case SNode::Or: {
        sat::Lit a = (*this)(sk, n.a), b = (*this)(sk, n.b);
        bool is_and = n.op == SNode::And;
        if (!is_and) {
          a = ~a;
          b = ~b;
        }
        sat::Lit g = sat::mk_lit(s_.new_var());
        s_.add_clause({~g, a});
        s_.add_clause({~g, b});
        s_.add_clause({g, ~a, ~b});
        out = is_and ? g : ~g;
        break;
      }
      case SNode::Iff: {
        sat::Lit a = (*this)(sk, n.a), b = (*this)(sk, n.b);
        sat::Lit g = sat::mk_lit(s_.new_var());
        s_.add_clause({~g, ~a, b});
        s_.add_clause({~g, a, ~b});
        s_.add_clause({g, a, b});
        s_.add_clause({g, ~a, ~b});
        out = g;
        break;
      }
    }
    memo_[id] = out;
    return out;
  }

 private:
  sat::Solver& s_;
  std::function<sat::Lit(const SNode&)> leaf_;
  sat::Lit true_;
  std::unordered_map<int, sat::Lit> memo_;
};

}  // namespace

Skeleton miniscope(const Formula& f, const Budgets& budgets) {
  Skeleton sk;
  auto fv = free_variables(f);
  if (fv.size() > 1) throw Error("monadic decision needs at most one free variable");
  if (!fv.empty()) sk.free_var = *fv.begin();
  Builder b(sk, budgets);
  sk.root = b.elim(closure(f));
  return sk;
}

std::vector<char> induced_assignment(const Skeleton& sk, const Structure& s) {
  std::vector<char> atoms(sk.atoms.size(), 0);
  std::vector<const Relation*> rels;
  for (const auto& p : sk.predicates) rels.push_back(s.has_symbol(p) ? &s.relation(p) : nullptr);
  for (size_t i = 0; i < sk.atoms.size(); ++i) {
    for (int u = 0; u < s.size() && !atoms[i]; ++u) {
      auto pred = [&](int p) { return rels[p] && rels[p]->get(static_cast<size_t>(u)); };
      atoms[i] = value(sk, sk.atoms[i].body, pred, atoms);
    }
  }
  return atoms;
}

bool skeleton_value(const Skeleton& sk, const std::vector<char>& atoms) {
  return value(sk, sk.root, [](int) -> bool { throw Error("internal: skeleton root mentions a variable"); }, atoms);
}

MfoResult decide_mfo(const Formula& f, const Budgets& budgets) {
  for (const auto& s : vocabulary_of(f).symbols())
    if (s.arity != 1) throw Error("not monadic: symbol " + s.name + " has arity " + std::to_string(s.arity));
  Skeleton sk = miniscope(f, budgets);
  MfoResult res;
  res.skeleton_atoms = sk.atoms.size();
  size_t na = sk.atoms.size();

  sat::Solver outer;
  // Trying atoms true first leaves fewer bodies to refute per element.
  outer.set_default_phase(true);
  std::vector<sat::Var> ov(na);
  for (auto& v : ov) v = outer.new_var();
  Encoder enc_outer(outer, [&](const SNode& n) -> sat::Lit {
    if (n.op != SNode::Atom) throw Error("internal: skeleton root mentions a variable");
    return sat::mk_lit(ov[static_cast<size_t>(n.var)]);
  });
  outer.add_clause({enc_outer(sk, sk.root)});

  // One element's predicate bits, with the atoms as parameters.
  sat::Solver inner;
  std::vector<sat::Var> pv(sk.predicates.size()), av(na);
  for (auto& v : pv) v = inner.new_var();
  for (auto& v : av) v = inner.new_var();
  Encoder enc_inner(inner, [&](const SNode& n) -> sat::Lit {
    return sat::mk_lit(n.op == SNode::Atom ? av[static_cast<size_t>(n.var)] : pv[static_cast<size_t>(n.pred)]);
  });
  std::vector<sat::Lit> body(na);
  for (size_t i = 0; i < na; ++i) body[i] = enc_inner(sk, sk.atoms[i].body);
  // Only atoms that occur inside some body need their value passed down.
  std::vector<char> param(na, 0);
  {
    std::vector<char> seen(sk.nodes.size(), 0);
    std::vector<int> todo;
    for (const auto& a : sk.atoms) todo.push_back(a.body);
    while (!todo.empty()) {
      int id = todo.back();
      todo.pop_back();
      if (id < 0 || seen[static_cast<size_t>(id)]) continue;
      seen[static_cast<size_t>(id)] = 1;
      const SNode& n = sk.nodes[static_cast<size_t>(id)];
      if (n.op == SNode::Atom) param[static_cast<size_t>(n.var)] = 1;
      todo.push_back(n.a);
      todo.push_back(n.b);
    }
  }
  // Atoms the outer clauses fix once and for all become permanent inner
  // clauses instead of assumptions.
  std::vector<char> pinned(na, 0);
  // Selectors stand for "body holds" and "body fails" so that every
  // assumption has one owner, even when two bodies share a literal.
  std::vector<sat::Lit> yes(na), no(na);
  std::unordered_map<int, sat::Lit> owner;  // assumption literal -> outer literal
  for (size_t i = 0; i < na; ++i) {
    yes[i] = sat::mk_lit(inner.new_var());
    no[i] = sat::mk_lit(inner.new_var());
    inner.add_clause({~yes[i], body[i]});
    inner.add_clause({~no[i], ~body[i]});
    owner[yes[i].x] = sat::mk_lit(ov[i]);
    owner[no[i].x] = sat::mk_lit(ov[i], true);
    for (bool neg : {false, true}) owner[sat::mk_lit(av[i], neg).x] = sat::mk_lit(ov[i], neg);
  }

  std::vector<std::vector<bool>> types;
  while (true) {
    ++res.rounds;
    if (outer.solve() != sat::Result::Sat) {
      res.sat = false;
      res.core.insert(res.core.begin(), "skeleton: " + sk.str());
      return res;
    }
    std::vector<char> sigma(na);
    for (size_t i = 0; i < na; ++i) sigma[i] = outer.model_value(ov[i]);
    for (size_t i = 0; i < na; ++i) {
      if (pinned[i] || outer.root_value(ov[i]) < 0) continue;
      pinned[i] = 1;
      inner.add_clause({sat::mk_lit(av[i], !sigma[i])});
      if (!sigma[i]) inner.add_clause({~body[i]});
    }
    std::vector<sat::Lit> base;
    for (size_t i = 0; i < na; ++i)
      if (!pinned[i] && param[i]) base.push_back(sat::mk_lit(av[i], !sigma[i]));
    for (size_t i = 0; i < na; ++i)
      if (!pinned[i] && !sigma[i]) base.push_back(no[i]);
    types.clear();
    bool ok = true;
    auto check = [&](std::optional<size_t> want) {
      std::vector<sat::Lit> as = base;
      if (want) as.push_back(yes[*want]);
      if (inner.solve(as) == sat::Result::Sat) {
        std::vector<bool> t;
        for (auto v : pv) t.push_back(inner.model_value(v));
        types.push_back(t);
        return;
      }
      ok = false;
      std::vector<sat::Lit> lemma;
      for (sat::Lit a : inner.core()) {
        auto it = owner.find(a.x);
        if (it == owner.end()) throw Error("internal: unknown assumption in core");
        lemma.push_back(~it->second);
      }
      std::sort(lemma.begin(), lemma.end());
      lemma.erase(std::unique(lemma.begin(), lemma.end()), lemma.end());
      std::string text;
      for (sat::Lit l : lemma) {
        if (!text.empty()) text += " | ";
        int i = static_cast<int>(std::find(ov.begin(), ov.end(), sat::var(l)) - ov.begin());
        text += (sat::sign(l) ? "!" : "") + sk.atom_name(i);
      }
      res.core.push_back(text.empty() ? "false" : text);
      outer.add_clause(lemma);
    };
    // A type found for one atom often realizes others too.
    std::vector<char> covered(na, 0);
    auto cover = [&](const std::vector<bool>& t) {
      auto pred = [&](int p) { return static_cast<bool>(t[static_cast<size_t>(p)]); };
      for (size_t j = 0; j < na; ++j)
        if (sigma[j] && !covered[j] && value(sk, sk.atoms[j].body, pred, sigma)) covered[j] = 1;
    };
    bool any = false;
    for (size_t i = 0; i < na; ++i)
      if (sigma[i]) {
        any = true;
        if (covered[i]) continue;
        size_t before = types.size();
        check(i);
        if (types.size() > before) cover(types.back());
      }
    if (!any) check(std::nullopt);
    if (!ok) continue;

    std::vector<std::string> names;
    for (size_t e = 0; e < types.size(); ++e) names.push_back("e" + std::to_string(e));
    Structure m(names);
    for (const auto& p : sk.predicates) m.add_symbol(p, 1);
    for (size_t e = 0; e < types.size(); ++e)
      for (size_t p = 0; p < sk.predicates.size(); ++p)
        if (types[e][p]) m.set(sk.predicates[p], {static_cast<int>(e)});
    for (const auto& s : vocabulary_of(f).symbols())
      if (!m.has_symbol(s.name)) m.add_symbol(s.name, s.arity);
    res.sat = true;
    res.model = std::move(m);
    if (!model_check(res.model, {}, closure(f))) throw Error("internal: monadic model failed replay");
    if (sk.free_var) res.witness = extract_witness(res, f);
    return res;
  }
}

int extract_witness(const MfoResult& r, const Formula& f) {
  if (!r.sat) throw Error("no witness: the formula is unsatisfiable");
  auto fv = free_variables(f);
  if (fv.size() != 1) throw Error("witness extraction needs exactly one free variable");
  for (int u = 0; u < r.model.size(); ++u)
    if (model_check(r.model, {{*fv.begin(), u}}, f)) return u;
  throw Error("internal: no element satisfies the formula");
}

}  // namespace uf1
