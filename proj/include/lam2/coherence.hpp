#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lam2/yoneda.hpp"

namespace lam2 {

enum class Kappa { Zero = 0, One = 1, Infinite = 2 };
const char* kappa_name(Kappa k);  // "0", "1", "inf"

bool coherent_pair(const PolyTree& e, const std::string& x, Color c, const std::string& y, Color d);
bool is_phi_coherent(const PolyTree& e, const Valuation& phi);

// A literal X^c of the 2-SAT encoding.
struct Literal {
  std::string var;
  Color color;
  bool operator==(const Literal&) const = default;
};

// Clauses (a or b) over literals; a unit clause repeats its literal.
std::vector<std::pair<Literal, Literal>> coherence_clauses(const PolyTree& e);

struct ValuationSearch {
  std::optional<Valuation> valuation;
  std::vector<Literal> conflict;  // a strongly connected component holding X^c and X^c̄
};

ValuationSearch find_valuation_detailed(const PolyTree& e);
std::optional<Valuation> find_valuation(const PolyTree& e);
bool is_coherent(const PolyTree& e);
// Enumerates all valuations against the clause set. Requires at most 20 bound variables.
bool brute_force_coherent(const PolyTree& e);

using Move = std::pair<NodeId, NodeId>;
std::vector<Move> down_moves(const PolyTree& e);
std::vector<Move> up_moves(const PolyTree& e);
// One cyclic alternating path as the node sequence a0 a1 ... a2n with a2n = a0, if any.
std::optional<std::vector<NodeId>> find_cyclic_alternating_path(const PolyTree& e);
bool has_cyclic_alternating_path(const PolyTree& e);

Kappa characteristic(const PolyTree& e);
Kappa characteristic_of_type(const Type& a);

}  // namespace lam2
