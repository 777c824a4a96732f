#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "lam2/coherence.hpp"

namespace lam2 {

struct NotCoherentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OpenTypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FragmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Mono simplify_mono(const Mono& m);
// n for an n-fold sum of 1 (0 for Zero, 1 for One); nullopt otherwise.
std::optional<std::uint64_t> numeral_value(const Mono& m);
Mono numeral(std::uint64_t n);

// Eliminates all quantifiers by uniform reduction under the canonical valuation.
Mono flat(const Type& a);

// nullopt means not-finite: the type is incoherent or its flattening is not a numeral.
std::optional<std::uint64_t> count_inhabitants(const Type& a);

bool balanced(const Type& a);
bool negatively_non_duplicated(const Type& a);
bool positively_non_duplicated(const Type& a);
std::size_t simple_depth(const Type& a);

Type sharp(const Mono& m);

}  // namespace lam2
