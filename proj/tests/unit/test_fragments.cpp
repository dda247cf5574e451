#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "uf1/fragments.hpp"

using namespace uf1;

namespace {
const char* kEtaCom = "forall x. forall y. forall z. forall w. ((H(x,y) & V(x,z) & H(z,w)) -> V(y,w))";
}

TEST_SUITE("fragments") {

TEST_CASE("is_uniform_set") {
  CHECK(is_uniform_set({parse("T(x,y)"), parse("S(y,x)")}, {"x", "y"}));
  CHECK(is_uniform_set({parse("R(x,x,y)"), parse("R(y,y,x)"), parse("S(y,x)")}, {"x", "y"}));
  std::vector<Formula> bad{parse("R(x,y,z)"), parse("R(x,y,y)")};
  for (auto Y : std::vector<std::set<std::string>>{{}, {"x"}, {"x", "y"}, {"x", "y", "z"}})
    CHECK_FALSE(is_uniform_set(bad, Y));
  CHECK(is_uniform_set({}, {}));
}

TEST_CASE("property: a single atom is uniform over its own variables") {
  std::mt19937_64 rng(17);
  testgen::Spec spec{{{"R", 3}, {"S", 4}}, {"x", "y", "z", "w"}, 0, false};
  for (int i = 0; i < 200; ++i) {
    Formula a = testgen::random_formula(rng, spec, 0);
    if (a->kind == Kind::Atom) CHECK(is_uniform_set({a}, atom_vars(a)));
  }
}

TEST_CASE("check_uf1") {
  CHECK(check_uf1(parse("exists y. (!R(x,y) & P(y))")).member);
  CHECK(check_uf1(parse("exists x2. exists x3. (R(x1,x2,x3) & P(x2) & P(x3))")).member);
  CHECK(check_uf1(parse("exists x. exists y. exists z. R(x,y,z)")).member);
  CHECK(check_uf1(top()).member);
  CHECK(check_uf1(parse("S(x,x,x) & P(y)")).member);
  CHECK_FALSE(check_uf1(parse("R(x,y)")).member);
  // More than one variable left free by a block with a binary atom.
  CHECK_FALSE(check_uf1(parse("exists y. R(x,y,z)")).member);
  // Universal blocks are read as negated existential blocks.
  CHECK(check_uf1(parse("forall x. exists y. (R(x,y) & R(y,x) & !P(x))")).member);

  auto r = check_uf1(parse(kEtaCom));
  CHECK_FALSE(r.member);
  CHECK(r.rule == "uf1.iii.uniform");
  std::vector<std::string> want{"H(x,y)", "V(x,z)", "H(z,w)", "V(y,w)"};
  REQUIRE(r.atoms.size() == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(print(r.atoms[i]) == want[i]);
  CHECK(r.message.find("non-uniform atom set") != std::string::npos);
}

TEST_CASE("check_gf1") {
  CHECK(check_gf1(parse("forall x. exists y. H(x,y)")).member);
  CHECK(check_gf1(parse(kEtaCom)).member);
  CHECK_FALSE(check_gf1(parse("exists y. R(x,y,z)")).member);
}

TEST_CASE("check_suf2") {
  CHECK(check_suf2(parse("forall x1. forall x2. (S(x1,x2) -> forall y. Hp(x1,x2,y))")).member);
  CHECK(check_suf2(parse("forall x. exists y. S(x,y)")).member);
  CHECK(check_suf2(parse("R(x,y)")).member);
  CHECK_FALSE(check_suf2(parse("R(x,y,z)")).member);
  CHECK_FALSE(check_suf2(parse("exists u. R(x,y,z,u)")).member);
  CHECK_FALSE(check_suf2(parse("exists z. exists w. (R(x,y,z) & R(x,z,w))")).member);
}

TEST_CASE("property: UF1 is contained in GF1 and SUF2") {
  std::mt19937_64 rng(19);
  testgen::Spec spec{{{"P", 1}, {"R", 2}, {"S", 3}}, {"x", "y", "z"}, 5, true};
  int members = 0;
  for (int i = 0; i < 5000; ++i) {
    Formula f = testgen::random_formula(rng, spec);
    if (!check_uf1(f).member) continue;
    ++members;
    INFO(print(f));
    CHECK(check_gf1(f).member);
    CHECK(check_suf2(f).member);
  }
  CHECK(members > 100);
}

}  // TEST_SUITE
