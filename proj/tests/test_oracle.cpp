#include <doctest.h>

#include "common.hpp"

using namespace lam2;
using fixtures::ty;

TEST_CASE("oracle: small counts") {
  CHECK(enumerate_inhabitants(ty("X -> X")).count == 1);
  CHECK(enumerate_inhabitants(ty("X -> X -> X")).count == 2);
  CHECK(enumerate_inhabitants(ty("X")).count == 0);
  CHECK(enumerate_inhabitants(ty("(X -> Y) -> X -> Y")).count == 1);
  CHECK(enumerate_inhabitants(ty("((X -> X) -> X) -> X")).count == 1);
  OracleCount c = enumerate_inhabitants(ty("X -> X -> X"));
  CHECK(c.complete);
  CHECK_FALSE(c.infinite);
}

TEST_CASE("oracle: infinite types") {
  OracleCount c = enumerate_inhabitants(ty("(X -> X) -> X -> X"));
  CHECK(c.infinite);
  CHECK_FALSE(c.complete);
}

TEST_CASE("oracle: unique") {
  OracleCount c = enumerate_inhabitants(ty("(((X -> Y) -> X -> Z) -> (Y -> Z) -> W) -> (Y -> Z) -> W"));
  CHECK(c.complete);
  CHECK(c.count == 1);
}

TEST_CASE("oracle: inhabitation") {
  CHECK(inhabited(ty("X -> X")));
  CHECK_FALSE(inhabited(ty("(X -> Y) -> Y")));
  CHECK(inhabited(ty("((X -> Y) -> X) -> (X -> Y) -> Y")));
  CHECK_THROWS_AS(enumerate_inhabitants(ty("forall X. X")), std::invalid_argument);
}
