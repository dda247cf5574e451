#include "uf1/diagrams.hpp"

#include <mutex>

namespace uf1 {

namespace {

// All position vectors of length n over {0..k-1} that hit every position.
void onto_vectors(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    std::vector<char> hit(k, 0);
    for (int p : cur) hit[p] = 1;
    for (char h : hit)
      if (!h) return;
    out.push_back(cur);
    return;
  }
  for (int p = 0; p < k; ++p) {
    cur.push_back(p);
    onto_vectors(n, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> surjections(int from, int to) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (from >= to && to >= 1) onto_vectors(from, to, cur, out);
  return out;
}

DiagramSpace::DiagramSpace(const Vocabulary& v, int k) : vocab_(v.at_least(k)), k_(k) {
  if (k < 2) throw Error("diagrams have arity at least two");
  for (const auto& s : vocab_.symbols()) {
    for (auto& pos : surjections(s.arity, k)) {
      YAtom a{s.name, std::move(pos)};
      index_[a] = static_cast<int>(atoms_.size());
      atoms_.push_back(std::move(a));
    }
  }
  if (atoms_.size() > 63)
    throw Error("diagram space of arity " + std::to_string(k) + " over " + vocab_.str() + " has " +
                std::to_string(atoms_.size()) + " atoms; at most 63 are supported");
}

int DiagramSpace::find(const YAtom& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

Formula DiagramSpace::atom_formula(size_t i, const std::vector<std::string>& vars) const {
  std::vector<std::string> args;
  for (int p : atoms_[i].pos) args.push_back(vars[p]);
  return uf1::atom(atoms_[i].symbol, std::move(args));
}

std::shared_ptr<const DiagramSpace> diagram_space(const Vocabulary& v, int k) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<const DiagramSpace>> cache;
  Vocabulary key_v = v.at_least(k);
  auto key = std::make_pair(key_v.str(), k);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sp = std::make_shared<const DiagramSpace>(key_v, k);
  cache.emplace(key, sp);
  return sp;
}

std::vector<std::string> standard_vars(int k) {
  std::vector<std::string> v;
  for (int i = 1; i <= k; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Diagram::Diagram(std::shared_ptr<const DiagramSpace> space, uint64_t bits)
    : Diagram(space, bits, standard_vars(space->arity())) {}

Diagram::Diagram(std::shared_ptr<const DiagramSpace> space, uint64_t bits, std::vector<std::string> vars)
    : space_(std::move(space)), bits_(bits), vars_(std::move(vars)) {
  if (space_->num_atoms() == 0) throw Error("the empty set is not a diagram");
  if (static_cast<int>(vars_.size()) != space_->arity()) throw Error("diagram needs one variable per position");
  if (bits_ >= space_->count()) throw Error("diagram index out of range");
}

std::vector<Formula> Diagram::literals() const {
  std::vector<Formula> out;
  for (size_t i = 0; i < space_->num_atoms(); ++i) {
    Formula a = space_->atom_formula(i, vars_);
    out.push_back(positive(i) ? a : neg(a));
  }
  return out;
}

Formula Diagram::conjunction() const { return conj(literals()); }

std::string Diagram::str() const {
  std::string s = "{";
  auto lits = literals();
  for (size_t i = 0; i < lits.size(); ++i) s += (i ? ", " : "") + print(lits[i]);
  return s + "}";
}

std::vector<Formula> enumerate_y_atoms(const Vocabulary& v, const std::vector<std::string>& Y) {
  if (Y.empty()) throw Error("Y must contain at least one variable");
  std::vector<Formula> out;
  for (const auto& s : v.symbols()) {
    for (const auto& pos : surjections(s.arity, static_cast<int>(Y.size()))) {
      std::vector<std::string> args;
      for (int p : pos) args.push_back(Y[p]);
      out.push_back(atom(s.name, args));
    }
  }
  return out;
}

std::vector<Diagram> enumerate_diagrams(const Vocabulary& v, int k) {
  auto sp = diagram_space(v, k);
  std::vector<Diagram> out;
  for (uint64_t b = 0; b < sp->count(); ++b) out.emplace_back(sp, b);
  return out;
}

std::vector<Formula> Projection::formulas() const {
  std::vector<Formula> out;
  auto vars = standard_vars(space->arity());
  for (const auto& [i, s] : literals) {
    Formula a = space->atom_formula(static_cast<size_t>(i), vars);
    out.push_back(s ? a : neg(a));
  }
  return out;
}

Projection project(const Diagram& d, const std::vector<int>& t) {
  int k = d.arity();
  if (static_cast<int>(t.size()) != k) throw Error("projection map must be defined on every position");
  int q = 0;
  for (int x : t) {
    if (x < 0) throw Error("projection map has a negative value");
    q = std::max(q, x + 1);
  }
  std::vector<char> hit(q, 0);
  for (int x : t) hit[x] = 1;
  for (char h : hit)
    if (!h) throw Error("projection map is not surjective");
  if (q < 2) throw Error("projection target must have at least two positions");
  Projection p;
  const auto& sp = d.space();
  p.space = diagram_space(sp.vocabulary(), q);
  std::map<int, bool> first;
  for (size_t i = 0; i < sp.num_atoms(); ++i) {
    YAtom a = sp.atom(i);
    for (int& x : a.pos) x = t[x];
    int j = p.space->find(a);
    if (j < 0) throw Error("projected atom outside the target space");
    bool s = d.positive(i);
    p.literals.insert({j, s});
    auto [it, fresh] = first.emplace(j, s);
    if (!fresh && it->second != s) p.contradictory = true;
  }
  return p;
}

bool leq(const Diagram& eta, const std::vector<int>& f, const Diagram& delta) {
  if (eta.arity() > delta.arity()) throw Error("leq needs eta's arity at most delta's");
  // delta's space only keeps symbols of arity >= k; eta's may hold more.
  if (!(eta.space().vocabulary().at_least(delta.arity()) == delta.space().vocabulary()))
    throw Error("leq needs diagrams over one vocabulary");
  Projection p = project(delta, f);
  if (p.space->arity() != eta.arity()) throw Error("projection map does not land on eta's arity");
  if (p.contradictory) return false;
  for (const auto& [i, s] : p.literals) {
    int j = eta.space().find(p.space->atom(static_cast<size_t>(i)));
    if (j < 0 || eta.positive(static_cast<size_t>(j)) != s) return false;
  }
  return true;
}

std::vector<InverseProjection> inverse_projections(const Diagram& delta, int max_arity) {
  // For a fixed surjection f the condition pins every sign of eta: atom j of
  // the p-ary space must carry the sign delta gives its image under f.
  std::vector<InverseProjection> out;
  int k = delta.arity();
  const Vocabulary& v = delta.space().vocabulary();
  for (int p = k; p <= max_arity; ++p) {
    auto sp = diagram_space(v, p);
    if (sp->num_atoms() == 0) continue;
    for (const auto& f : surjections(p, k)) {
      uint64_t bits = 0;
      for (size_t j = 0; j < sp->num_atoms(); ++j) {
        YAtom a = sp->atom(j);
        for (int& x : a.pos) x = f[x];
        int i = delta.space().find(a);
        if (i < 0) throw Error("inverse projection maps outside delta's space");
        if (delta.positive(static_cast<size_t>(i))) bits |= uint64_t{1} << j;
      }
      out.push_back({Diagram(sp, bits), f});
    }
  }
  return out;
}

bool diagram_holds(const Structure& s, const Tuple& t, const Diagram& d) {
  if (static_cast<int>(t.size()) != d.arity()) throw Error("tuple length differs from diagram arity");
  const auto& sp = d.space();
  for (size_t i = 0; i < sp.num_atoms(); ++i) {
    const YAtom& a = sp.atom(i);
    Tuple u;
    for (int p : a.pos) u.push_back(t[p]);
    if (s.holds(a.symbol, u) != d.positive(i)) return false;
  }
  return true;
}

std::optional<Diagram> diagram_from_literals(const Vocabulary& v, const std::vector<std::string>& vars,
                                             const std::vector<Formula>& literals) {
  int k = static_cast<int>(vars.size());
  if (k < 2) return std::nullopt;
  auto sp = diagram_space(v, k);
  if (sp->num_atoms() == 0) return std::nullopt;
  std::map<std::string, int> pos;
  for (int i = 0; i < k; ++i) pos[vars[i]] = i;
  std::vector<int> seen(sp->num_atoms(), -1);
  for (const auto& l : literals) {
    bool positive = l->kind == Kind::Atom;
    Formula a = positive ? l : (l->kind == Kind::Not && l->a->kind == Kind::Atom ? l->a : nullptr);
    if (!a) return std::nullopt;
    YAtom y{a->name, {}};
    for (const auto& arg : a->args) {
      auto it = pos.find(arg);
      if (it == pos.end()) return std::nullopt;
      y.pos.push_back(it->second);
    }
    int i = sp->find(y);
    if (i < 0) return std::nullopt;
    if (seen[i] >= 0 && seen[i] != static_cast<int>(positive)) return std::nullopt;
    seen[i] = positive;
  }
  uint64_t bits = 0;
  for (size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] < 0) return std::nullopt;
    if (seen[i]) bits |= uint64_t{1} << i;
  }
  return Diagram(sp, bits, vars);
}

}  // namespace uf1
