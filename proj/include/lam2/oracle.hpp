#pragma once

#include <cstdint>

#include "lam2/syntax.hpp"

namespace lam2 {

struct OracleCount {
  std::uint64_t count = 0;
  bool complete = false;
  bool infinite = false;  // a loop through inhabited sequents was found
};

// Counts beta-normal eta-long inhabitants of a quantifier-free type by
// goal-directed search. Throws std::invalid_argument on a quantifier.
OracleCount enumerate_inhabitants(const Type& a, std::size_t depth_bound = 64);

bool inhabited(const Type& a);

}  // namespace lam2
