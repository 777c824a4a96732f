#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lam2/syntax.hpp"

namespace lam2 {

using NodeId = int;

enum class LabelKind { Var, Bullet, Triangle };

// Terminal label. For Bullet and Triangle, `name` identifies the anchor they belong to.
struct Label {
  LabelKind kind = LabelKind::Var;
  std::string name;
  Color color = Color::Blue;

  bool operator==(const Label&) const = default;
};

enum class BinderKind { VarSet, MuAnchor, NuAnchor };

// A node is either a terminal carrying a label, or an inner node with a binder,
// a list of children and a head. The head is itself a node one edge below: a
// terminal in trees built from types, possibly an anchor subtree after reduction.
// An inner node with an empty VarSet binder and no children is never stored;
// it is collapsed into its head.
struct Node {
  bool terminal = true;
  Label label;
  BinderKind binder = BinderKind::VarSet;
  std::vector<std::string> vars;  // VarSet binder
  std::string anchor;             // anchor name for MuAnchor/NuAnchor
  Color color = Color::Blue;      // polarity of the subtree rooted here
  std::vector<NodeId> children;
  NodeId head = -1;
};

struct PolyTree {
  Color polarity = Color::Blue;
  NodeId root = -1;
  std::vector<Node> nodes;

  const Node& operator[](NodeId n) const { return nodes[n]; }
};

// Appends nodes; inner() applies the collapse rule.
class TreeBuilder {
 public:
  PolyTree tree;

  NodeId terminal(Label l);
  NodeId inner(BinderKind b, std::vector<std::string> vars, std::string anchor, Color c,
               std::vector<NodeId> children, NodeId head);
  // Copies the subtree of `src` at `n`. `hook` may supply a replacement for any source node.
  NodeId copy(const PolyTree& src, NodeId n, const std::function<std::optional<NodeId>(NodeId)>& hook = {});
  PolyTree finish(NodeId root);
};

// Renumbers reachable nodes in preorder (node, children, head).
PolyTree compact(const PolyTree& t);

std::vector<NodeId> parents(const PolyTree& t);
std::vector<NodeId> preorder(const PolyTree& t, NodeId from);
std::vector<NodeId> preorder(const PolyTree& t);
bool is_ancestor_or_self(const std::vector<NodeId>& parent, NodeId anc, NodeId n);
std::size_t depth_of(const std::vector<NodeId>& parent, NodeId n);

// Bound variables in preorder of their binding nodes.
std::vector<std::string> bound_variables(const PolyTree& t);
std::set<std::string> free_variables(const PolyTree& t);
// Every variable, bound variable and anchor name used in the tree.
std::set<std::string> all_names(const PolyTree& t);
std::size_t terminal_count(const PolyTree& t, NodeId from);

PolyTree tree_of_type(const Type& a, Color polarity);
bool tree_equal(const PolyTree& e, const PolyTree& f);
bool is_simple(const PolyTree& e);
Mono tau(const PolyTree& e);
Type type_of_tree(const PolyTree& e);

// Throws std::logic_error describing the first violated structural invariant.
void validate(const PolyTree& e);

// Color swap on every node and label.
PolyTree swap_colors(const PolyTree& e);

struct DotOptions {
  bool modular = false;
  bool pairs = false;
};
std::string to_dot(const PolyTree& e, DotOptions opts = {});
std::string label_text(const Label& l);

}  // namespace lam2
