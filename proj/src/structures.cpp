#include "uf1/structures.hpp"

#include <cmath>
#include <json.hpp>

#include "uf1/ground.hpp"

namespace uf1 {

size_t Relation::capacity() const {
  size_t c = 1;
  for (int i = 0; i < arity; ++i) c *= static_cast<size_t>(n);
  return c;
}

Structure::Structure(std::vector<std::string> domain) : domain_(std::move(domain)) {
  if (domain_.empty()) throw Error("a structure needs a nonempty domain");
  for (size_t i = 0; i < domain_.size(); ++i)
    if (!index_.emplace(domain_[i], static_cast<int>(i)).second)
      throw Error("duplicate domain element " + domain_[i]);
}

Structure Structure::of_size(int n) {
  std::vector<std::string> d;
  for (int i = 1; i <= n; ++i) d.push_back("e" + std::to_string(i));
  return Structure(std::move(d));
}

int Structure::element(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown domain element " + name);
  return it->second;
}

void Structure::add_symbol(const std::string& name, int arity) {
  auto it = rels_.find(name);
  if (it != rels_.end()) {
    if (it->second.arity != arity) throw ArityError(name, it->second.arity, arity);
    return;
  }
  Relation r;
  r.arity = arity;
  r.n = size();
  double cells = std::pow(static_cast<double>(size()), arity);
  if (cells > double(uint64_t{1} << 31))
    throw Error("relation " + name + " is too large to store densely");
  r.bits.assign((r.capacity() + 63) / 64, 0);
  rels_.emplace(name, std::move(r));
}

Vocabulary Structure::vocabulary() const {
  Vocabulary v;
  for (const auto& [n, r] : rels_) v.add(n, r.arity);
  return v;
}

const Relation& Structure::relation(const std::string& name) const {
  auto it = rels_.find(name);
  if (it == rels_.end()) throw Error("symbol " + name + " is not interpreted in the structure");
  return it->second;
}

Relation& Structure::relation(const std::string& name) {
  auto it = rels_.find(name);
  if (it == rels_.end()) throw Error("symbol " + name + " is not interpreted in the structure");
  return it->second;
}

bool Structure::holds(const std::string& sym, const Tuple& t) const {
  const Relation& r = relation(sym);
  if (static_cast<int>(t.size()) != r.arity) throw ArityError(sym, r.arity, static_cast<int>(t.size()));
  return r.get(r.offset(t));
}

void Structure::set(const std::string& sym, const Tuple& t, bool value) {
  Relation& r = relation(sym);
  if (static_cast<int>(t.size()) != r.arity) throw ArityError(sym, r.arity, static_cast<int>(t.size()));
  for (int e : t)
    if (e < 0 || e >= size()) throw Error("element index out of range");
  r.put(r.offset(t), value);
}

std::vector<Tuple> Structure::tuples(const std::string& sym) const {
  const Relation& r = relation(sym);
  std::vector<Tuple> out;
  size_t cap = r.capacity();
  for (size_t o = 0; o < cap; ++o) {
    if (!r.get(o)) continue;
    Tuple t(r.arity);
    size_t x = o;
    for (int i = r.arity - 1; i >= 0; --i) {
      t[i] = static_cast<int>(x % r.n);
      x /= r.n;
    }
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

Evaluator::Evaluator(const Structure& s, const Formula& f, const std::vector<std::string>& free_vars)
    : s_(&s) {
  std::map<std::string, std::vector<int>> scope;
  for (const auto& v : free_vars) scope[v].push_back(nslots_++);
  nfree_ = nslots_;
  root_ = compile(f, scope);
}

int Evaluator::compile(const Formula& f, std::map<std::string, std::vector<int>>& scope) {
  Node n;
  switch (f->kind) {
    case Kind::Atom: {
      n.op = Op::Atom;
      n.rel = &s_->relation(f->name);
      if (n.rel->arity != static_cast<int>(f->args.size()))
        throw ArityError(f->name, n.rel->arity, static_cast<int>(f->args.size()));
      for (const auto& v : f->args) {
        auto it = scope.find(v);
        if (it == scope.end() || it->second.empty()) throw Error("unbound free variable " + v);
        n.slots.push_back(it->second.back());
      }
      break;
    }
    case Kind::True:
      n.op = Op::True;
      break;
    case Kind::False:
      n.op = Op::False;
      break;
    case Kind::Not:
      n.op = Op::Not;
      n.kids.push_back(compile(f->a, scope));
      break;
    case Kind::And:
    case Kind::Or: {
      n.op = f->kind == Kind::And ? Op::And : Op::Or;
      // Flatten chains of the same connective.
      std::vector<Formula> stack{f->b, f->a};
      while (!stack.empty()) {
        Formula g = stack.back();
        stack.pop_back();
        if (g->kind == f->kind) {
          stack.push_back(g->b);
          stack.push_back(g->a);
        } else {
          n.kids.push_back(compile(g, scope));
        }
      }
      break;
    }
    case Kind::Implies:
    case Kind::Iff:
      n.op = f->kind == Kind::Implies ? Op::Implies : Op::Iff;
      n.kids.push_back(compile(f->a, scope));
      n.kids.push_back(compile(f->b, scope));
      break;
    case Kind::Exists:
    case Kind::Forall: {
      n.op = f->kind == Kind::Exists ? Op::Exists : Op::Forall;
      n.slot = nslots_++;
      scope[f->name].push_back(n.slot);
      n.kids.push_back(compile(f->a, scope));
      scope[f->name].pop_back();
      break;
    }
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

bool Evaluator::eval(int id, std::vector<int>& env) const {
  const Node& n = nodes_[id];
  switch (n.op) {
    case Op::Atom: {
      size_t o = 0;
      for (int s : n.slots) o = o * static_cast<size_t>(n.rel->n) + static_cast<size_t>(env[s]);
      return n.rel->get(o);
    }
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Not:
      return !eval(n.kids[0], env);
    case Op::And:
      for (int k : n.kids)
        if (!eval(k, env)) return false;
      return true;
    case Op::Or:
      for (int k : n.kids)
        if (eval(k, env)) return true;
      return false;
    case Op::Implies:
      return !eval(n.kids[0], env) || eval(n.kids[1], env);
    case Op::Iff:
      return eval(n.kids[0], env) == eval(n.kids[1], env);
    case Op::Exists:
      for (int e = 0; e < s_->size(); ++e) {
        env[n.slot] = e;
        if (eval(n.kids[0], env)) return true;
      }
      return false;
    case Op::Forall:
      for (int e = 0; e < s_->size(); ++e) {
        env[n.slot] = e;
        if (!eval(n.kids[0], env)) return false;
      }
      return true;
  }
  return false;
}

bool Evaluator::operator()(const std::vector<int>& values) const {
  if (static_cast<int>(values.size()) != nfree_) throw Error("wrong number of values for evaluator");
  std::vector<int> env(nslots_, 0);
  for (int i = 0; i < nfree_; ++i) {
    if (values[i] < 0 || values[i] >= s_->size()) throw Error("assignment outside the domain");
    env[i] = values[i];
  }
  return eval(root_, env);
}

bool model_check(const Structure& s, const Assignment& a, const Formula& f) {
  std::vector<std::string> vars;
  std::vector<int> vals;
  for (const auto& v : free_variables(f)) {
    auto it = a.find(v);
    if (it == a.end()) throw Error("unbound free variable " + v);
    vars.push_back(v);
    vals.push_back(it->second);
  }
  return Evaluator(s, f, vars)(vals);
}

// ---------------------------------------------------------------- enumeration

CapExceeded::CapExceeded(const std::string& what, double count, double cap)
    : Error(what + ": " + std::to_string(count) + " exceeds the cap of " + std::to_string(cap)),
      count(count), cap(cap) {}

StructureSpace::StructureSpace(const Vocabulary& v, int n, uint64_t cap) : vocab_(v), n_(n) {
  if (n < 1) throw Error("domain size must be at least 1");
  double total_bits = 0;
  for (const auto& s : v.symbols()) total_bits += std::pow(double(n), s.arity);
  if (total_bits > 63 || std::pow(2.0, total_bits) > double(cap))
    throw CapExceeded("structure count", std::pow(2.0, total_bits), double(cap));
  bits_ = static_cast<int>(total_bits);
  count_ = uint64_t{1} << bits_;
}

Structure StructureSpace::at(uint64_t index) const {
  Structure s = Structure::of_size(n_);
  for (const auto& sym : vocab_.symbols()) s.add_symbol(sym.name, sym.arity);
  load(index, s);
  return s;
}

void StructureSpace::load(uint64_t index, Structure& s) const {
  int bit = 0;
  for (const auto& sym : vocab_.symbols()) {
    Relation& r = s.relation(sym.name);
    size_t cap = r.capacity();
    std::fill(r.bits.begin(), r.bits.end(), 0);
    for (size_t o = 0; o < cap; ++o, ++bit)
      if ((index >> bit) & 1) r.put(o, true);
  }
}

std::vector<Structure> enumerate_structures(const Vocabulary& v, int n, uint64_t cap) {
  StructureSpace space(v, n, cap);
  std::vector<Structure> out;
  out.reserve(space.count());
  for (uint64_t i = 0; i < space.count(); ++i) out.push_back(space.at(i));
  return out;
}

// ---------------------------------------------------------------- oracle

namespace {

constexpr int kEnumerationBits = 16;

std::optional<OracleModel> by_enumeration(const Formula& f, const Vocabulary& v, int n,
                                          const std::vector<std::string>& fv, uint64_t cap) {
  StructureSpace space(v, n, cap);
  Structure s = space.at(0);
  Evaluator ev(s, f, fv);
  for (uint64_t i = 0; i < space.count(); ++i) {
    space.load(i, s);
    if (fv.empty()) {
      if (ev({})) return OracleModel{s, {}};
    } else {
      for (int e = 0; e < n; ++e)
        if (ev({e})) return OracleModel{s, {{fv[0], e}}};
    }
  }
  return std::nullopt;
}

std::optional<OracleModel> by_grounding(const Formula& f, const Vocabulary& v, int n,
                                        const std::vector<std::string>& fv) {
  sat::Solver solver;
  Grounder g(solver, v, n);
  std::vector<sat::Lit> roots;
  if (fv.empty()) {
    roots.push_back(g.encode(f, {}));
  } else {
    // The free variable is fixed to e1: structures are closed under permutation.
    roots.push_back(g.encode(f, {{fv[0], 0}}));
  }
  solver.add_clause({g.mk_or(roots)});
  if (solver.solve() != sat::Result::Sat) return std::nullopt;
  OracleModel m{g.decode(), {}};
  if (!fv.empty()) m.witness[fv[0]] = 0;
  if (!model_check(m.model, m.witness, f)) throw Error("grounded oracle model failed replay");
  return m;
}

}  // namespace

std::optional<OracleModel> oracle_model_of_size(const Formula& f, int n, uint64_t cap,
                                                OracleMethod method) {
  auto fvs = free_variables(f);
  if (fvs.size() > 1) throw Error("the oracle accepts at most one free variable");
  std::vector<std::string> fv(fvs.begin(), fvs.end());
  Vocabulary v = vocabulary_of(f);
  double bits = 0;
  for (const auto& s : v.symbols()) bits += std::pow(double(n), s.arity);
  if (method == OracleMethod::Enumerate || (method == OracleMethod::Auto && bits <= kEnumerationBits))
    return by_enumeration(f, v, n, fv, cap);
  return by_grounding(f, v, n, fv);
}

std::optional<OracleModel> oracle_sat(const Formula& f, int max_size, uint64_t cap) {
  for (int n = 1; n <= max_size; ++n)
    if (auto m = oracle_model_of_size(f, n, cap)) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------- JSON

Structure structure_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid structure JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("domain") || !j["domain"].is_array())
    throw Error("structure JSON needs a \"domain\" array");
  std::vector<std::string> dom;
  for (const auto& e : j["domain"]) {
    if (!e.is_string()) throw Error("domain elements must be strings");
    dom.push_back(e.get<std::string>());
  }
  Structure s(std::move(dom));
  if (j.contains("relations")) {
    if (!j["relations"].is_object()) throw Error("\"relations\" must be an object");
    for (const auto& [name, tuples] : j["relations"].items()) {
      if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0])))
        throw Error("relation names must start with an uppercase letter: " + name);
      if (!tuples.is_array()) throw Error("relation " + name + " must be a list of tuples");
      int arity = -1;
      std::vector<Tuple> ts;
      for (const auto& t : tuples) {
        if (!t.is_array() || t.empty()) throw Error("relation " + name + " has a malformed tuple");
        if (arity < 0) arity = static_cast<int>(t.size());
        if (static_cast<int>(t.size()) != arity)
          throw Error("relation " + name + " has ragged tuples");
        Tuple tt;
        for (const auto& e : t) {
          if (!e.is_string()) throw Error("tuple entries must be element names");
          tt.push_back(s.element(e.get<std::string>()));
        }
        ts.push_back(std::move(tt));
      }
      if (arity < 0) {
        // An empty relation carries no arity; an explicit "arities" map may supply it.
        if (j.contains("arities") && j["arities"].contains(name)) arity = j["arities"][name].get<int>();
        else arity = 1;
      }
      s.add_symbol(name, arity);
      for (const auto& t : ts) s.set(name, t);
    }
  }
  return s;
}

std::string structure_to_json(const Structure& s) {
  nlohmann::ordered_json j;
  j["domain"] = s.domain();
  nlohmann::ordered_json rels = nlohmann::ordered_json::object();
  nlohmann::ordered_json arities = nlohmann::ordered_json::object();
  for (const auto& sym : s.vocabulary().symbols()) {
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    for (const auto& t : s.tuples(sym.name)) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int e : t) row.push_back(s.domain()[e]);
      ts.push_back(row);
    }
    rels[sym.name] = ts;
    arities[sym.name] = sym.arity;
  }
  j["relations"] = rels;
  j["arities"] = arities;
  return j.dump();
}

}  // namespace uf1
