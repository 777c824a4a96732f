#pragma once

#include <string>

#include "lam2/finite.hpp"
#include "lam2/normform.hpp"
#include "lam2/oracle.hpp"

namespace fixtures {

inline const char* const kInt = "forall X. (X -> X) -> X -> X";
inline const char* const kSixfold =
    "forall X. X -> X -> forall Y. (forall Z. (Z -> X) -> (forall W. (W -> Z) -> W -> X) -> Z -> Y) -> (X -> Y) -> Y";
inline const char* const kUnique = "forall X Y Z W. (((X -> Y) -> X -> Z) -> (Y -> Z) -> W) -> (Y -> Z) -> W";
inline const char* const kCyclic = "forall X Y. (Y -> X) -> (forall Z. (Z -> X) -> Z -> Y) -> Y";
inline const char* const kNotCoherent = "forall X Y. (forall Z. ((Z -> Z) -> X) -> X) -> Y -> Y";
inline const char* const kSmall = "forall X. (X -> X) -> (forall Y. X -> Y) -> X";
inline const char* const kTwinA = "forall X Y. (X -> X) -> (forall Z. X -> Z) -> (Y -> X) -> Y";
inline const char* const kTwinB = "forall X. (X -> X) -> forall Y. (Y -> X) -> (X -> forall Z. Z) -> Y";
inline const char* const kPairwise = "forall X Y. (X -> Y -> X) -> ((Y -> X) -> W) -> Z";

inline lam2::Type ty(const std::string& s) { return lam2::parse_type(s); }
inline lam2::Mono mo(const std::string& s) { return lam2::parse_mono(s); }
inline lam2::PolyTree tree(const std::string& s) { return lam2::tree_of_type(ty(s), lam2::Color::Blue); }

}  // namespace fixtures
