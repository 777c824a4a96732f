#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lam2/polytree.hpp"

namespace lam2 {

using BigNat = boost::multiprecision::cpp_int;
using Valuation = std::map<std::string, Color>;

NodeId binding_node(const PolyTree& e, const std::string& x);
NodeId head_node(const PolyTree& e, const std::string& x);
std::size_t distance(const PolyTree& e, NodeId n, NodeId m);

// Throws std::invalid_argument unless n is a terminal labelled with a bound variable.
bool is_modular(const PolyTree& e, NodeId n);
std::set<NodeId> modular_nodes(const PolyTree& e);
// Modular X-pairs as (blue node, red node).
std::vector<std::pair<NodeId, NodeId>> modular_pairs(const PolyTree& e);
// Terminal nodes labelled x with the given color.
std::vector<NodeId> occurrences_of(const PolyTree& e, const std::string& x, Color c);

bool is_c_eliminable(const PolyTree& e, const std::string& x, Color c);
bool is_eliminable(const PolyTree& e, const std::string& x);

struct Decomposition {
  std::string x;
  Color color;
  bool mu_case;  // color equals the polarity of the binding node
  NodeId root;
  struct G {
    NodeId node;  // a child of root
    bool collapsed;  // the child is the terminal itself (mu case only)
    std::vector<std::string> z;
    std::vector<NodeId> d;
    NodeId x_node;  // the modular terminal
    NodeId e = -1;  // head of the child (nu case)
  };
  std::vector<G> g;
  std::vector<NodeId> f;
  NodeId head;
};

// Throws std::invalid_argument when x is not c-eliminable.
Decomposition decompose(const PolyTree& e, const std::string& x, Color c);
// Rebuilds the original subtree rooted at r_X from a decomposition.
PolyTree reassemble(const PolyTree& e, const Decomposition& d);

struct Step {
  PolyTree tree;
  // Each bound variable of the result mapped to the bound variable of the source it copies.
  std::map<std::string, std::string> ancestry;
};

Step reduce_step_traced(const PolyTree& e, const std::string& x, Color c);
PolyTree reduce_step(const PolyTree& e, const std::string& x, Color c);
// No X^c occurrence outside the eliminated scope survives: θ acts on nothing.
bool is_canceling(const PolyTree& e, const std::string& x, Color c);

BigNat measure(const PolyTree& e);
BigNat measure_with_base(const PolyTree& e, const BigNat& s);

enum class Policy { Outermost, Innermost, Random, LeastCanceling };

struct TraceStep {
  std::string var;
  Color color;
  BigNat measure_before, measure_after;
  std::map<std::string, std::string> ancestry;
};

struct Reduction {
  PolyTree result;
  std::vector<TraceStep> trace;
};

// Throws std::invalid_argument if e is not phi-coherent.
Reduction standard_reduce(const PolyTree& e, const Valuation& phi, Policy policy = Policy::Outermost,
                          std::uint64_t seed = 0);

// Innermost-first elimination, every copy coloured by chi of its origin.
// seed 0 picks candidates in preorder; any other seed picks them at random.
Reduction uniform_reduce(const PolyTree& e, const Valuation& chi, std::uint64_t seed = 0);

}  // namespace lam2
