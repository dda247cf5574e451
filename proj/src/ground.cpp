#include "uf1/ground.hpp"

#include <algorithm>

namespace uf1 {

using sat::Lit;

Grounder::Grounder(sat::Solver& s, const Vocabulary& v, int n) : s_(s), vocab_(v), n_(n) {
  true_ = sat::mk_lit(s_.new_var());
  s_.add_clause({true_});
  for (const auto& sym : v.symbols()) {
    size_t cells = 1;
    for (int i = 0; i < sym.arity; ++i) cells *= static_cast<size_t>(n);
    int first = s_.num_vars();
    for (size_t c = 0; c < cells; ++c) s_.new_var();
    base_[sym.name] = {first, sym.arity};
  }
}

Lit Grounder::atom(const std::string& sym, const Tuple& t) {
  auto it = base_.find(sym);
  if (it == base_.end()) throw Error("symbol " + sym + " is not in the grounding vocabulary");
  if (static_cast<int>(t.size()) != it->second.second)
    throw ArityError(sym, it->second.second, static_cast<int>(t.size()));
  size_t o = 0;
  for (int e : t) o = o * static_cast<size_t>(n_) + static_cast<size_t>(e);
  return sat::mk_lit(it->second.first + static_cast<int>(o));
}

Lit Grounder::mk_and(std::vector<Lit> ls) {
  std::vector<Lit> keep;
  for (Lit p : ls) {
    if (p == false_lit()) return false_lit();
    if (p != true_lit()) keep.push_back(p);
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (size_t i = 1; i < keep.size(); ++i)
    if (keep[i] == ~keep[i - 1]) return false_lit();
  if (keep.empty()) return true_lit();
  if (keep.size() == 1) return keep[0];
  std::vector<int> key;
  for (Lit p : keep) key.push_back(p.x);
  auto it = and_cache_.find(key);
  if (it != and_cache_.end()) return it->second;
  Lit v = sat::mk_lit(s_.new_var());
  std::vector<Lit> big{v};
  for (Lit p : keep) {
    s_.add_clause({~v, p});
    big.push_back(~p);
  }
  s_.add_clause(big);
  and_cache_.emplace(std::move(key), v);
  return v;
}

Lit Grounder::mk_or(std::vector<Lit> ls) {
  for (Lit& p : ls) p = ~p;
  return ~mk_and(std::move(ls));
}

Lit Grounder::mk_iff(Lit a, Lit b) {
  return mk_or({mk_and({a, b}), mk_and({~a, ~b})});
}

Lit Grounder::encode(const Formula& f, const Assignment& env) {
  auto fv_it = fv_cache_.find(f.get());
  if (fv_it == fv_cache_.end()) {
    auto fv = free_variables(f);
    fv_it = fv_cache_.emplace(f.get(), std::vector<std::string>(fv.begin(), fv.end())).first;
  }
  std::vector<int> key;
  for (const auto& v : fv_it->second) {
    auto e = env.find(v);
    if (e == env.end()) throw Error("unbound free variable " + v);
    key.push_back(e->second);
  }
  auto memo_key = std::make_pair(f.get(), key);
  auto m = memo_.find(memo_key);
  if (m != memo_.end()) return m->second;

  Lit r;
  switch (f->kind) {
    case Kind::Atom: {
      Tuple t;
      for (const auto& a : f->args) t.push_back(env.at(a));
      r = atom(f->name, t);
      break;
    }
    case Kind::True:
      r = true_lit();
      break;
    case Kind::False:
      r = false_lit();
      break;
    case Kind::Not:
      r = ~encode(f->a, env);
      break;
    case Kind::And:
      r = mk_and({encode(f->a, env), encode(f->b, env)});
      break;
    case Kind::Or:
      r = mk_or({encode(f->a, env), encode(f->b, env)});
      break;
    case Kind::Implies:
      r = mk_or({~encode(f->a, env), encode(f->b, env)});
      break;
    case Kind::Iff:
      r = mk_iff(encode(f->a, env), encode(f->b, env));
      break;
    case Kind::Exists:
    case Kind::Forall: {
      Assignment inner = env;
      std::vector<Lit> parts;
      for (int e = 0; e < n_; ++e) {
        inner[f->name] = e;
        parts.push_back(encode(f->a, inner));
      }
      r = f->kind == Kind::Exists ? mk_or(parts) : mk_and(parts);
      break;
    }
  }
  memo_.emplace(std::move(memo_key), r);
  return r;
}

Structure Grounder::decode() const {
  Structure s = Structure::of_size(n_);
  for (const auto& [name, info] : base_) {
    s.add_symbol(name, info.second);
    Relation& rel = s.relation(name);
    size_t cap = rel.capacity();
    for (size_t o = 0; o < cap; ++o)
      rel.put(o, s_.model_value(sat::Var(info.first + static_cast<int>(o))));
  }
  return s;
}

}  // namespace uf1
