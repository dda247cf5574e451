#include "uf1/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace uf1 {

ParseError::ParseError(const std::string& msg, int line, int col)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
      line(line), col(col) {}

ArityError::ArityError(const std::string& symbol, int first, int second)
    : Error("arity conflict for " + symbol + ": used with arity " + std::to_string(first) +
            " and " + std::to_string(second)),
      symbol(symbol), first(first), second(second) {}

Vocabulary::Vocabulary(std::initializer_list<RelationSymbol> syms) {
  for (const auto& s : syms) add(s);
}

void Vocabulary::add(const std::string& name, int arity) {
  if (arity < 1) throw Error("symbol " + name + " must have positive arity");
  auto [it, fresh] = arity_.emplace(name, arity);
  if (!fresh && it->second != arity) throw ArityError(name, it->second, arity);
}

void Vocabulary::merge(const Vocabulary& other) {
  for (const auto& [n, a] : other.arity_) add(n, a);
}

int Vocabulary::arity(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) throw Error("unknown symbol " + name);
  return it->second;
}

int Vocabulary::max_arity() const {
  int m = 0;
  for (const auto& [n, a] : arity_) m = std::max(m, a);
  return m;
}

std::vector<RelationSymbol> Vocabulary::symbols() const {
  std::vector<RelationSymbol> out;
  for (const auto& [n, a] : arity_) out.push_back({n, a});
  return out;
}

Vocabulary Vocabulary::at_least(int k) const {
  Vocabulary v;
  for (const auto& [n, a] : arity_)
    if (a >= k) v.add(n, a);
  return v;
}

std::string Vocabulary::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [n, a] : arity_) {
    if (!first) s += ", ";
    first = false;
    s += n + "/" + std::to_string(a);
  }
  return s + "}";
}

// ---------------------------------------------------------------- construction

namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

Formula make(Kind k, std::string name, std::vector<std::string> args, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->args = std::move(args);
  n->a = std::move(a);
  n->b = std::move(b);
  size_t h = mix(0, static_cast<size_t>(k));
  h = mix(h, std::hash<std::string>{}(n->name));
  for (const auto& s : n->args) h = mix(h, std::hash<std::string>{}(s));
  if (n->a) h = mix(h, n->a->hash);
  if (n->b) h = mix(h, n->b->hash);
  n->hash = h;
  return n;
}

Formula balanced(Kind k, const std::vector<Formula>& fs, size_t lo, size_t hi) {
  if (hi - lo == 1) return fs[lo];
  size_t mid = lo + (hi - lo) / 2;
  return make(k, "", {}, balanced(k, fs, lo, mid), balanced(k, fs, mid, hi));
}

}  // namespace

Formula atom(const std::string& symbol, std::vector<std::string> args) {
  if (args.empty()) throw Error("atom " + symbol + " needs at least one argument");
  return make(Kind::Atom, symbol, std::move(args), nullptr, nullptr);
}
Formula top() {
  static const Formula t = make(Kind::True, "", {}, nullptr, nullptr);
  return t;
}
Formula bot() {
  static const Formula f = make(Kind::False, "", {}, nullptr, nullptr);
  return f;
}
Formula neg(Formula f) { return make(Kind::Not, "", {}, std::move(f), nullptr); }
Formula conj(Formula l, Formula r) { return make(Kind::And, "", {}, std::move(l), std::move(r)); }
Formula disj(Formula l, Formula r) { return make(Kind::Or, "", {}, std::move(l), std::move(r)); }
Formula implies(Formula l, Formula r) {
  return make(Kind::Implies, "", {}, std::move(l), std::move(r));
}
Formula iff(Formula l, Formula r) { return make(Kind::Iff, "", {}, std::move(l), std::move(r)); }
Formula exists(const std::string& v, Formula f) {
  return make(Kind::Exists, v, {}, std::move(f), nullptr);
}
Formula forall(const std::string& v, Formula f) {
  return make(Kind::Forall, v, {}, std::move(f), nullptr);
}
Formula exists(const std::vector<std::string>& vs, Formula f) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) f = exists(*it, f);
  return f;
}
Formula forall(const std::vector<std::string>& vs, Formula f) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) f = forall(*it, f);
  return f;
}

// Big conjunctions are built balanced so that recursive passes stay shallow.
Formula conj(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  return balanced(Kind::And, fs, 0, fs.size());
}
Formula disj(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  return balanced(Kind::Or, fs, 0, fs.size());
}

bool equal(const Formula& x, const Formula& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->kind != y->kind || x->name != y->name || x->args != y->args)
    return false;
  return equal(x->a, y->a) && equal(x->b, y->b);
}

bool is_quantifier(const Formula& f) { return f->kind == Kind::Exists || f->kind == Kind::Forall; }

bool is_boolean(const Formula& f) {
  switch (f->kind) {
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Lower, Upper, LParen, RParen, Comma, Dot, Not, And, Or, Imp, Iff, Forall, Exists,
                 True, False, End };

struct Token {
  Tok t;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      int l = line_, c = col_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string id;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                                  s_[i_] == '_' || s_[i_] == '\'')) {
          id += s_[i_];
          adv();
        }
        Tok t = std::isupper(static_cast<unsigned char>(id[0])) ? Tok::Upper : Tok::Lower;
        if (id == "forall") t = Tok::Forall;
        else if (id == "exists") t = Tok::Exists;
        else if (id == "true") t = Tok::True;
        else if (id == "false") t = Tok::False;
        else if (id[0] == '_') throw ParseError("identifier may not start with '_'", l, c);
        out.push_back({t, id, l, c});
        continue;
      }
      auto sym = [&](Tok t, size_t n) {
        out.push_back({t, s_.substr(i_, n), l, c});
        for (size_t k = 0; k < n; ++k) adv();
      };
      if (s_.compare(i_, 3, "<->") == 0) sym(Tok::Iff, 3);
      else if (s_.compare(i_, 2, "->") == 0) sym(Tok::Imp, 2);
      else if (s_.compare(i_, 3, "\xE2\x86\x94") == 0) sym(Tok::Iff, 3);     // ↔
      else if (s_.compare(i_, 3, "\xE2\x86\x92") == 0) sym(Tok::Imp, 3);     // →
      else if (s_.compare(i_, 3, "\xE2\x88\x80") == 0) sym(Tok::Forall, 3);  // ∀
      else if (s_.compare(i_, 3, "\xE2\x88\x83") == 0) sym(Tok::Exists, 3);  // ∃
      else if (s_.compare(i_, 2, "\xC2\xAC") == 0) sym(Tok::Not, 2);         // ¬
      else if (s_.compare(i_, 3, "\xE2\x88\xA7") == 0) sym(Tok::And, 3);     // ∧
      else if (s_.compare(i_, 3, "\xE2\x88\xA8") == 0) sym(Tok::Or, 3);      // ∨
      else if (s_.compare(i_, 3, "\xE2\x8A\xA4") == 0) sym(Tok::True, 3);    // ⊤
      else if (s_.compare(i_, 3, "\xE2\x8A\xA5") == 0) sym(Tok::False, 3);   // ⊥
      else if (ch == '(') sym(Tok::LParen, 1);
      else if (ch == ')') sym(Tok::RParen, 1);
      else if (ch == ',') sym(Tok::Comma, 1);
      else if (ch == '.') sym(Tok::Dot, 1);
      else if (ch == '!' || ch == '~') sym(Tok::Not, 1);
      else if (ch == '&') sym(Tok::And, 1);
      else if (ch == '|') sym(Tok::Or, 1);
      else throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
  }

 private:
  void adv() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++i_;
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        adv();
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') adv();
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Vocabulary* vocab) : toks_(std::move(toks)), vocab_(vocab) {}

  Formula run() {
    Formula f = formula();
    if (peek().t != Tok::End) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& m) const {
    throw ParseError(m, peek().line, peek().col);
  }
  void expect(Tok t, const char* what) {
    if (peek().t != t) fail(std::string("expected ") + what);
    ++pos_;
  }

  Formula formula() {
    if (peek().t == Tok::Forall || peek().t == Tok::Exists) return quantified();
    return iff_level();
  }
  Formula quantified() {
    bool all = take().t == Tok::Forall;
    if (peek().t != Tok::Lower) fail("expected a variable after quantifier");
    std::string v = take().text;
    expect(Tok::Dot, "'.' after quantified variable");
    Formula body = formula();
    return all ? forall(v, body) : exists(v, body);
  }
  Formula iff_level() {
    Formula f = imp_level();
    while (peek().t == Tok::Iff) {
      ++pos_;
      f = iff(f, imp_level());
    }
    return f;
  }
  Formula imp_level() {
    Formula f = or_level();
    if (peek().t == Tok::Imp) {
      ++pos_;
      return implies(f, imp_level());
    }
    return f;
  }
  Formula or_level() {
    Formula f = and_level();
    while (peek().t == Tok::Or) {
      ++pos_;
      f = disj(f, and_level());
    }
    return f;
  }
  Formula and_level() {
    Formula f = unary();
    while (peek().t == Tok::And) {
      ++pos_;
      f = conj(f, unary());
    }
    return f;
  }
  Formula unary() {
    switch (peek().t) {
      case Tok::Not:
        ++pos_;
        return neg(unary());
      case Tok::LParen: {
        ++pos_;
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::True:
        ++pos_;
        return top();
      case Tok::False:
        ++pos_;
        return bot();
      case Tok::Forall:
      case Tok::Exists:
        return quantified();
      case Tok::Upper:
        return atom_();
      case Tok::Lower:
        fail("'" + peek().text + "' is a variable; relation symbols start with an uppercase letter");
      default:
        fail(peek().t == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
    }
  }
  Formula atom_() {
    Token s = take();
    expect(Tok::LParen, "'(' after relation symbol");
    std::vector<std::string> args;
    for (;;) {
      if (peek().t != Tok::Lower) fail("expected a variable argument");
      args.push_back(take().text);
      if (peek().t == Tok::Comma) {
        ++pos_;
        continue;
      }
      expect(Tok::RParen, "',' or ')'");
      break;
    }
    if (vocab_) vocab_->add(s.text, static_cast<int>(args.size()));
    return atom(s.text, std::move(args));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Vocabulary* vocab_;
};

}  // namespace

Formula parse(const std::string& text, Vocabulary* vocab) {
  Vocabulary local;
  Parser p(Lexer(text).run(), vocab ? vocab : &local);
  return p.run();
}

// ---------------------------------------------------------------- printer

namespace {

// Context levels: 0 formula, 1 iff operand, 2 implication, 3 or, 4 and, 5 unary.
void print_rec(const Formula& f, int ctx, std::string& out) {
  auto binary = [&](const char* op, int level, int lctx, int rctx) {
    bool paren = ctx > level;
    if (paren) out += '(';
    print_rec(f->a, lctx, out);
    out += op;
    print_rec(f->b, rctx, out);
    if (paren) out += ')';
  };
  switch (f->kind) {
    case Kind::Atom:
      out += f->name;
      out += '(';
      for (size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ',';
        out += f->args[i];
      }
      out += ')';
      break;
    case Kind::True:
      out += "true";
      break;
    case Kind::False:
      out += "false";
      break;
    case Kind::Not:
      out += '!';
      print_rec(f->a, 5, out);
      break;
    case Kind::And:
      binary(" & ", 4, 4, 5);
      break;
    case Kind::Or:
      binary(" | ", 3, 3, 4);
      break;
    case Kind::Implies:
      binary(" -> ", 2, 3, 2);
      break;
    case Kind::Iff:
      binary(" <-> ", 1, 1, 2);
      break;
    case Kind::Exists:
    case Kind::Forall: {
      bool paren = ctx > 0;
      if (paren) out += '(';
      out += f->kind == Kind::Exists ? "exists " : "forall ";
      out += f->name;
      out += ". ";
      print_rec(f->a, 0, out);
      if (paren) out += ')';
      break;
    }
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------- utilities

namespace {

void free_rec(const Formula& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::Atom:
      for (const auto& v : f->args)
        if (!bound.count(v)) out.insert(v);
      break;
    case Kind::True:
    case Kind::False:
      break;
    case Kind::Exists:
    case Kind::Forall: {
      auto it = bound.insert(f->name);
      free_rec(f->a, bound, out);
      bound.erase(it);
      break;
    }
    default:
      free_rec(f->a, bound, out);
      if (f->b) free_rec(f->b, bound, out);
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  free_rec(f, bound, out);
  return out;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->kind == Kind::Atom) out.insert(g->args.begin(), g->args.end());
    if (is_quantifier(g)) out.insert(g->name);
    if (g->a) go(g->a);
    if (g->b) go(g->b);
  };
  go(f);
  return out;
}

std::string fresh_var(const std::string& base, const std::set<std::string>& used) {
  std::string v = base;
  do v += '\'';
  while (used.count(v));
  return v;
}

namespace {

Formula subst_rec(const Formula& f, const std::map<std::string, std::string>& m) {
  switch (f->kind) {
    case Kind::Atom: {
      std::vector<std::string> args = f->args;
      bool changed = false;
      for (auto& a : args) {
        auto it = m.find(a);
        if (it != m.end() && it->second != a) {
          a = it->second;
          changed = true;
        }
      }
      return changed ? atom(f->name, std::move(args)) : f;
    }
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Exists:
    case Kind::Forall: {
      std::set<std::string> fv = free_variables(f->a);
      std::map<std::string, std::string> inner;
      for (const auto& [k, v] : m)
        if (k != f->name && fv.count(k) && k != v) inner[k] = v;
      if (inner.empty()) return f;
      std::string bv = f->name;
      bool capture = false;
      for (const auto& [k, v] : inner)
        if (v == bv) capture = true;
      if (capture) {
        std::set<std::string> used = fv;
        for (const auto& [k, v] : inner) {
          used.insert(k);
          used.insert(v);
        }
        used.insert(bv);
        std::string nb = fresh_var(bv, used);
        inner[bv] = nb;
        bv = nb;
      }
      Formula body = subst_rec(f->a, inner);
      return f->kind == Kind::Exists ? exists(bv, body) : forall(bv, body);
    }
    default: {
      Formula a = subst_rec(f->a, m);
      Formula b = f->b ? subst_rec(f->b, m) : nullptr;
      if (a == f->a && b == f->b) return f;
      switch (f->kind) {
        case Kind::Not: return neg(a);
        case Kind::And: return conj(a, b);
        case Kind::Or: return disj(a, b);
        case Kind::Implies: return implies(a, b);
        default: return iff(a, b);
      }
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, std::string>& m) {
  return subst_rec(f, m);
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    out.push_back(g);
    if (g->b) stack.push_back(g->b);
    if (g->a) stack.push_back(g->a);
  }
  return out;
}

Vocabulary vocabulary_of(const Formula& f) {
  Vocabulary v;
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{f.get()};
  while (!stack.empty()) {
    const Node* g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    if (g->kind == Kind::Atom) v.add(g->name, static_cast<int>(g->args.size()));
    if (g->a) stack.push_back(g->a.get());
    if (g->b) stack.push_back(g->b.get());
  }
  return v;
}

size_t tree_size(const Formula& f) {
  size_t n = 1;
  if (f->a) n += tree_size(f->a);
  if (f->b) n += tree_size(f->b);
  return n;
}

std::set<std::string> atom_vars(const Formula& a) {
  return std::set<std::string>(a->args.begin(), a->args.end());
}

int atom_arity_class(const Formula& a) { return static_cast<int>(atom_vars(a).size()); }

}  // namespace uf1
