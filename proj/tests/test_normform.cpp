#include <doctest.h>

#include "common.hpp"

using namespace lam2;
using fixtures::ty;

TEST_CASE("nf: codomain quantifiers move left") {
  CHECK(alpha_equal(nf(ty("A -> forall X. B -> X")), ty("forall X. A -> B -> X")));
}

TEST_CASE("nf: vacuous quantifiers are dropped") {
  CHECK(alpha_equal(nf(ty("forall X. Y -> Z")), ty("Y -> Z")));
  CHECK(alpha_equal(nf(ty("forall X. forall Y. Y")), ty("forall Y. Y")));
}

TEST_CASE("nf: fixed point on normal forms") {
  for (const char* s : {fixtures::kTwinA, fixtures::kInt, "forall X. X", "A -> B"}) {
    Type a = nf(freshen(ty(s)));
    CHECK(is_nf(a));
    CHECK(alpha_equal(nf(a), a));
  }
  CHECK_FALSE(is_nf(ty("forall X. Y")));
  CHECK_FALSE(is_nf(ty("A -> forall X. X")));
}

TEST_CASE("nf: renames a binder that would capture") {
  Type a = nf(ty("X -> forall X. X"));
  CHECK(is_nf(a));
  CHECK(iso_beta_eta(a, ty("X -> forall X. X")));
  CHECK(free_vars(a) == std::set<std::string>{"X"});
}

TEST_CASE("nf view and build") {
  NfView v = view(nf(freshen(ty(fixtures::kTwinA))));
  CHECK(v.binders.size() == 2);
  CHECK(v.premises.size() == 3);
  CHECK(v.head == "Y");
  CHECK(alpha_equal(build(v), nf(freshen(ty(fixtures::kTwinA)))));
}

TEST_CASE("sim: premise permutation") {
  CHECK(sim(ty("forall X. A -> B -> X"), ty("forall X. B -> A -> X")));
  CHECK_FALSE(sim(ty("X"), ty("Y")));
  CHECK(sim(ty(fixtures::kInt), ty(fixtures::kInt)));
  CHECK(sim(ty("forall X Y. X -> Y -> X"), ty("forall Y X. Y -> X -> Y")));
  CHECK(sim(ty("forall X Y. X -> Y -> X"), ty("forall X Y. X -> Y -> Y")));
  CHECK_FALSE(sim(ty("forall X Y. X -> X -> Y"), ty("forall X Y. X -> Y -> Y")));
  CHECK_FALSE(sim(ty("forall X. X -> X -> X"), ty("forall X. X -> X")));
}

TEST_CASE("iso: the two twin types") {
  CHECK(iso_beta_eta(ty(fixtures::kTwinA), ty(fixtures::kTwinB)));
}

TEST_CASE("iso: basic cases") {
  CHECK(iso_beta_eta(ty(fixtures::kUnique), ty(fixtures::kUnique)));
  CHECK_FALSE(iso_beta_eta(ty("forall X. X"), ty("forall X. X -> X")));
  CHECK(iso_beta_eta(ty("A -> B -> C"), ty("B -> A -> C")));
  CHECK_FALSE(iso_beta_eta(ty("(A -> B) -> C"), ty("A -> B -> C")));
  CHECK(iso_beta_eta(ty("forall X. A -> X -> X"), ty("A -> forall Y. Y -> Y")));
  for (const char* s : {fixtures::kSixfold, fixtures::kCyclic, fixtures::kNotCoherent})
    CHECK(iso_beta_eta(ty(s), nf(freshen(ty(s)))));
}
