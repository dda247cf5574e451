#include "uf1/fragments.hpp"

#include <unordered_map>
#include <unordered_set>

namespace uf1 {

std::string MembershipReport::str() const {
  if (member) return "member";
  std::string s = "non-member [" + rule + "]: " + message;
  if (blame) s += "\n  at: " + print(blame);
  return s;
}

std::string fragment_name(Fragment f) {
  switch (f) {
    case Fragment::UF1: return "uf1";
    case Fragment::GF1: return "gf1";
    case Fragment::SUF2: return "suf2";
  }
  return "?";
}

bool is_uniform_set(const std::vector<Formula>& atoms, const std::set<std::string>& Y) {
  for (const auto& a : atoms)
    if (atom_vars(a) != Y) return false;
  return true;
}

Block collect_block(const Formula& f) {
  Block b;
  b.kind = f->kind;
  Formula g = f;
  std::set<std::string> seen;
  while (g->kind == b.kind && !seen.count(g->name)) {
    seen.insert(g->name);
    b.vars.push_back(g->name);
    g = g->a;
  }
  b.matrix = g;
  return b;
}

std::vector<Formula> boolean_leaves(const Formula& m) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  std::vector<Formula> stack{m};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (is_boolean(g)) {
      if (g->b) stack.push_back(g->b);
      stack.push_back(g->a);
    } else if (seen.insert(g).second) {
      out.push_back(g);
    }
  }
  return out;
}

namespace {

std::string var_list(const std::set<std::string>& vs) {
  std::string s = "{";
  for (const auto& v : vs) s += (s.size() > 1 ? "," : "") + v;
  return s + "}";
}

std::string atom_list(const std::vector<Formula>& as) {
  std::string s = "{";
  for (size_t i = 0; i < as.size(); ++i) s += (i ? "," : "") + print(as[i]);
  return s + "}";
}

MembershipReport fail(const Formula& at, std::string rule, std::string msg,
                      std::vector<Formula> atoms = {}) {
  MembershipReport r;
  r.member = false;
  r.blame = at;
  r.rule = std::move(rule);
  r.message = std::move(msg);
  r.atoms = std::move(atoms);
  return r;
}

class Checker {
 public:
  explicit Checker(Fragment f) : frag_(f), tag_(fragment_name(f)) {}

  MembershipReport check(const Formula& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    MembershipReport r = compute(f);
    memo_.emplace(f.get(), r);
    return r;
  }

 private:
  int atom_limit() const { return frag_ == Fragment::SUF2 ? 2 : 1; }

  MembershipReport compute(const Formula& f) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
        return {};
      case Kind::Atom: {
        int c = atom_arity_class(f);
        if (c <= atom_limit()) return {};
        return fail(f, tag_ + ".i.atom",
                    "atom with " + std::to_string(c) +
                        " distinct variables must occur inside a quantifier block that admits it");
      }
      case Kind::Exists:
      case Kind::Forall:
        return block(f);
      default: {
        MembershipReport a = check(f->a);
        if (!a.member) return a;
        if (f->b) return check(f->b);
        return a;
      }
    }
  }

  struct Leaves {
    std::vector<Formula> atoms;  // atom leaves with at least two distinct variables
    std::vector<Formula> others;  // everything else
  };

  MembershipReport block(const Formula& f) {
    Block b = collect_block(f);
    std::vector<Formula> leaves = boolean_leaves(b.matrix);
    Leaves split;
    for (const auto& l : leaves) {
      if (l->kind == Kind::Atom && atom_arity_class(l) >= 2) split.atoms.push_back(l);
      else split.others.push_back(l);
    }
    std::set<std::string> fv = free_variables(b.matrix);

    // The innermost suffix of the block is formed by the fragment's block
    // rule; the remaining outer quantifiers each quantify a member.
    MembershipReport first;
    for (size_t i = 0; i < b.vars.size(); ++i) {
      std::set<std::string> bound(b.vars.begin() + static_cast<long>(i), b.vars.end());
      std::set<std::string> out;
      for (const auto& v : fv)
        if (!bound.count(v)) out.insert(v);
      MembershipReport r = suffix_rule(f, bound, out, split);
      if (r.member) return r;
      if (i == 0) first = r;
    }
    // All leaves are members: Boolean closure and single quantification.
    bool all = true;
    for (const auto& l : leaves)
      if (!check(l).member) all = false;
    if (all) return {};
    return first;
  }

  MembershipReport leaves_members(const std::vector<Formula>& ls) {
    for (const auto& l : ls) {
      MembershipReport r = check(l);
      if (!r.member) return r;
    }
    return {};
  }

  MembershipReport uniform_atoms(const Formula& at, const std::vector<Formula>& atoms,
                                 const std::string& rule) {
    if (atoms.empty()) return {};
    std::set<std::string> V = atom_vars(atoms[0]);
    if (is_uniform_set(atoms, V)) return {};
    return fail(at, rule, "non-uniform atom set " + atom_list(atoms), atoms);
  }

  MembershipReport suffix_rule(const Formula& at, const std::set<std::string>& bound,
                               const std::set<std::string>& out, const Leaves& ls) {
    switch (frag_) {
      case Fragment::UF1: {
        if (out.size() > 1)
          return fail(at, "uf1.iii.free",
                      "quantifier block leaves " + var_list(out) + " free; at most one is allowed");
        MembershipReport r = uniform_atoms(at, ls.atoms, "uf1.iii.uniform");
        if (!r.member) return r;
        return leaves_members(ls.others);
      }
      case Fragment::GF1: {
        if (out.size() > 1)
          return fail(at, "gf1.iii.free",
                      "quantifier block leaves " + var_list(out) + " free; at most one is allowed");
        return leaves_members(ls.others);
      }
      case Fragment::SUF2: {
        std::set<std::string> Y = bound;
        Y.insert(out.begin(), out.end());
        MembershipReport three;
        if (bound.size() <= 2 && Y.size() <= 2) {
          three = leaves_members(ls.atoms);
          if (three.member) three = leaves_members(ls.others);
          if (three.member) return three;
        } else {
          three = fail(at, "suf2.iii.free",
                       "two-variable block rule needs at most two variables in " + var_list(Y));
        }
        if (out.size() > 2)
          return fail(at, "suf2.iv.free",
                      "quantifier block leaves " + var_list(out) + " free; at most two are allowed");
        MembershipReport r = uniform_atoms(at, ls.atoms, "suf2.iv.uniform");
        if (!r.member) return Y.size() <= 2 ? three : r;
        for (const auto& l : ls.others) {
          MembershipReport m = check(l);
          if (!m.member) return m;
          if (free_variables(l).size() > 1)
            return Y.size() <= 2 ? three
                                 : fail(l, "suf2.iv.unary",
                                        "formula with more than one free variable next to a uniform atom set");
        }
        return {};
      }
    }
    return {};
  }

  Fragment frag_;
  std::string tag_;
  std::unordered_map<const Node*, MembershipReport> memo_;
};

}  // namespace

MembershipReport check_fragment(const Formula& f, Fragment which) { return Checker(which).check(f); }
MembershipReport check_uf1(const Formula& f) { return check_fragment(f, Fragment::UF1); }
MembershipReport check_gf1(const Formula& f) { return check_fragment(f, Fragment::GF1); }
MembershipReport check_suf2(const Formula& f) { return check_fragment(f, Fragment::SUF2); }

}  // namespace uf1
