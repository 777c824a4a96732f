#include <doctest.h>

#include "common.hpp"

using namespace lam2;
using fixtures::mo;
using fixtures::tree;
using fixtures::ty;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

// A mu-anchor named a: the children are k-nodes, each an empty binder over the given
// factor lists, with head Bullet(a) of the opposite color.
struct AnchorSketch {
  TreeBuilder b;
  Color c = Color::Blue;

  NodeId bullet(Color col) { return b.terminal({LabelKind::Bullet, "a", col}); }
  NodeId var(const std::string& x, Color col) { return b.terminal({LabelKind::Var, x, col}); }
  NodeId knode(std::vector<NodeId> factors) {
    return b.inner(BinderKind::VarSet, {}, "", flip(c), std::move(factors), bullet(flip(c)));
  }
  PolyTree anchor(std::vector<NodeId> knodes) {
    NodeId r = b.inner(BinderKind::MuAnchor, {}, "a", c, std::move(knodes), bullet(c));
    return b.finish(r);
  }
};

}  // namespace

TEST_CASE("tree_of_type: identity") {
  PolyTree t = tree("forall X. X -> X");
  const Node& r = t[t.root];
  REQUIRE_FALSE(r.terminal);
  CHECK(r.vars == std::vector<std::string>{"X"});
  REQUIRE(r.children.size() == 1);
  CHECK(t[r.children[0]].terminal);
  CHECK(t[r.children[0]].label == Label{LabelKind::Var, "X", Color::Red});
  CHECK(t[r.head].label == Label{LabelKind::Var, "X", Color::Blue});
  validate(t);
}

TEST_CASE("tree_of_type: a free variable is a single terminal") {
  PolyTree t = tree("Y");
  CHECK(t.nodes.size() == 1);
  CHECK(t[t.root].label == Label{LabelKind::Var, "Y", Color::Blue});
  CHECK(is_simple(t));
}

TEST_CASE("tree_of_type: twin shape") {
  PolyTree t = tree(fixtures::kTwinA);
  const Node& r = t[t.root];
  CHECK(r.vars.size() == 2);
  CHECK(r.children.size() == 3);
  CHECK(t[r.head].label.name == "Y");
  CHECK(t[r.head].label.color == Color::Blue);
  validate(t);
}

TEST_CASE("tree_equal") {
  CHECK(tree_equal(tree("A -> B -> C"), tree("B -> A -> C")));
  CHECK(tree_equal(tree("forall X. X -> X"), tree("forall Y. Y -> Y")));
  CHECK(tree_equal(tree(fixtures::kTwinA), tree(fixtures::kTwinB)));
  CHECK_FALSE(tree_equal(tree("forall X Y. X -> X -> Y"), tree("forall X Y. X -> Y -> Y")));
  CHECK_FALSE(tree_equal(tree("forall X. X -> X"), swap_colors(tree("forall X. X -> X"))));
}

TEST_CASE("is_simple") {
  CHECK(is_simple(tree("(A -> B) -> A")));
  CHECK_FALSE(is_simple(tree("forall X. X -> X")));
}

TEST_CASE("tau: quantifier-free trees") {
  CHECK(alpha_equal(tau(tree("(A -> B) -> A")), mo("(A -> B) -> A")));
  CHECK(alpha_equal(tau(tree("A")), mo("A")));
  CHECK_THROWS(tau(tree("forall X. X")));
}

TEST_CASE("tau: anchors encoding 0 and 1") {
  AnchorSketch zero;
  CHECK(tau(zero.anchor({}))->kind == MonoNode::Zero);

  AnchorSketch one;
  NodeId k = one.knode({});
  CHECK(tau(one.anchor({k}))->kind == MonoNode::One);
}

TEST_CASE("tau: anchor for mu a. a * B + a") {
  AnchorSketch s;
  NodeId k1 = s.knode({s.bullet(Color::Blue), s.var("B", Color::Blue)});
  NodeId k2 = s.knode({s.bullet(Color::Blue)});
  PolyTree t = s.anchor({k1, k2});
  CHECK(alpha_equal(tau(t), mo("mu a. a * B + a")));
}

TEST_CASE("type_of_tree: round trips") {
  for (const char* s : {"forall X. X -> X", "Y", fixtures::kSmall, fixtures::kSixfold, fixtures::kUnique}) {
    Type a = ty(s);
    CHECK(iso_beta_eta(type_of_tree(tree(s)), a));
  }
}

TEST_CASE("tree of nf equals tree") {
  for (const char* s : {fixtures::kTwinB, fixtures::kSixfold, "A -> forall X. X -> forall Y. Y"})
    CHECK(tree_equal(tree(s), tree_of_type(nf(freshen(ty(s))), Color::Blue)));
}

TEST_CASE("validate rejects broken trees") {
  PolyTree t = tree("forall X. X -> X");
  PolyTree bad = t;
  bad.nodes[bad[bad.root].head].label.color = Color::Red;
  CHECK_THROWS_AS(validate(bad), std::logic_error);
}

TEST_CASE("to_dot") {
  CHECK(to_dot(tree("Y")).rfind("digraph", 0) == 0);
  std::string small = to_dot(tree(fixtures::kSmall), {true, true});
  CHECK(count_of(small, "style=dashed") == 3);
  CHECK(count_of(small, "<U>") == 3);
  std::string leaf = to_dot(tree("Y"));
  CHECK(count_of(leaf, "label=") == 1);
  CHECK(count_of(leaf, "->") == 0);
}
