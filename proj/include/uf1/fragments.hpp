#pragma once

#include <set>
#include <string>
#include <vector>

#include "uf1/formula.hpp"

namespace uf1 {

struct MembershipReport {
  bool member = true;
  Formula blame;               // offending subformula when member is false
  std::string rule;            // violated formation rule, e.g. "uf1.iii.uniform"
  std::string message;
  std::vector<Formula> atoms;  // the offending atom set, when the rule is about atoms
  std::string str() const;
};

// Raised by stages that require fragment membership of their input.
struct FragmentError : Error {
  FragmentError(const std::string& fragment, MembershipReport r)
      : Error("not in " + fragment + ": " + r.str()), report(std::move(r)) {}
  MembershipReport report;
};

enum class Fragment { UF1, GF1, SUF2 };
std::string fragment_name(Fragment f);

MembershipReport check_uf1(const Formula& f);
MembershipReport check_gf1(const Formula& f);
MembershipReport check_suf2(const Formula& f);
MembershipReport check_fragment(const Formula& f, Fragment which);

// Every atom's variable set equals Y exactly (the empty set is Y-uniform for any Y).
bool is_uniform_set(const std::vector<Formula>& atoms, const std::set<std::string>& Y);

// A maximal block of like quantifiers. Variables are listed outermost first;
// a repeated variable ends the block so each variable is bound once.
struct Block {
  Kind kind = Kind::Exists;
  std::vector<std::string> vars;
  Formula matrix;
};
Block collect_block(const Formula& f);

// Maximal subformulas of a Boolean combination that are not themselves
// Boolean connectives (atoms, constants, quantified formulas), deduplicated.
std::vector<Formula> boolean_leaves(const Formula& m);

}  // namespace uf1
