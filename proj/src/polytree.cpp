#include "lam2/polytree.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "lam2/normform.hpp"
#include "lam2/yoneda.hpp"

namespace lam2 {

// ---------------------------------------------------------------- construction

NodeId TreeBuilder::terminal(Label l) {
  Node n;
  n.terminal = true;
  n.color = l.color;
  n.label = std::move(l);
  tree.nodes.push_back(std::move(n));
  return static_cast<NodeId>(tree.nodes.size() - 1);
}

NodeId TreeBuilder::inner(BinderKind b, std::vector<std::string> vars, std::string anchor, Color c,
                          std::vector<NodeId> children, NodeId head) {
  if (b == BinderKind::VarSet && vars.empty() && children.empty()) return head;
  Node n;
  n.terminal = false;
  n.binder = b;
  n.vars = std::move(vars);
  n.anchor = std::move(anchor);
  n.color = c;
  n.children = std::move(children);
  n.head = head;
  tree.nodes.push_back(std::move(n));
  return static_cast<NodeId>(tree.nodes.size() - 1);
}

NodeId TreeBuilder::copy(const PolyTree& src, NodeId n, const std::function<std::optional<NodeId>(NodeId)>& hook) {
  if (hook) {
    if (auto r = hook(n)) return *r;
  }
  const Node& s = src[n];
  if (s.terminal) return terminal(s.label);
  std::vector<NodeId> kids;
  for (NodeId c : s.children) kids.push_back(copy(src, c, hook));
  NodeId h = copy(src, s.head, hook);
  return inner(s.binder, s.vars, s.anchor, s.color, std::move(kids), h);
}

PolyTree TreeBuilder::finish(NodeId root) {
  tree.root = root;
  tree.polarity = tree.nodes[root].color;
  return compact(tree);
}

std::vector<NodeId> preorder(const PolyTree& t, NodeId from) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    out.push_back(n);
    const Node& x = t[n];
    if (x.terminal) continue;
    stack.push_back(x.head);
    for (auto it = x.children.rbegin(); it != x.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<NodeId> preorder(const PolyTree& t) { return preorder(t, t.root); }

PolyTree compact(const PolyTree& t) {
  auto order = preorder(t);
  std::vector<NodeId> id(t.nodes.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<NodeId>(i);
  PolyTree out;
  out.polarity = t.polarity;
  out.root = 0;
  for (NodeId n : order) {
    Node x = t[n];
    for (auto& c : x.children) c = id[c];
    if (!x.terminal) x.head = id[x.head];
    out.nodes.push_back(std::move(x));
  }
  return out;
}

std::vector<NodeId> parents(const PolyTree& t) {
  std::vector<NodeId> p(t.nodes.size(), -1);
  for (NodeId n = 0; n < static_cast<NodeId>(t.nodes.size()); ++n) {
    const Node& x = t[n];
    if (x.terminal) continue;
    for (NodeId c : x.children) p[c] = n;
    p[x.head] = n;
  }
  return p;
}

bool is_ancestor_or_self(const std::vector<NodeId>& parent, NodeId anc, NodeId n) {
  for (; n >= 0; n = parent[n])
    if (n == anc) return true;
  return false;
}

std::size_t depth_of(const std::vector<NodeId>& parent, NodeId n) {
  std::size_t d = 0;
  for (n = parent[n]; n >= 0; n = parent[n]) ++d;
  return d;
}

std::vector<std::string> bound_variables(const PolyTree& t) {
  std::vector<std::string> out;
  for (NodeId n : preorder(t)) {
    const Node& x = t[n];
    if (!x.terminal) out.insert(out.end(), x.vars.begin(), x.vars.end());
  }
  return out;
}

std::set<std::string> free_variables(const PolyTree& t) {
  auto bv = bound_variables(t);
  std::set<std::string> bound(bv.begin(), bv.end()), out;
  for (auto& x : t.nodes)
    if (x.terminal && x.label.kind == LabelKind::Var && !bound.count(x.label.name)) out.insert(x.label.name);
  return out;
}

std::set<std::string> all_names(const PolyTree& t) {
  std::set<std::string> out;
  for (auto& x : t.nodes) {
    if (x.terminal) {
      out.insert(x.label.name);
    } else {
      out.insert(x.vars.begin(), x.vars.end());
      if (!x.anchor.empty()) out.insert(x.anchor);
    }
  }
  return out;
}

std::size_t terminal_count(const PolyTree& t, NodeId from) {
  std::size_t k = 0;
  for (NodeId n : preorder(t, from))
    if (t[n].terminal) ++k;
  return k;
}

static NodeId build_nf(TreeBuilder& b, const Type& t, Color c) {
  NfView v = view(t);
  std::vector<NodeId> kids;
  for (auto& p : v.premises) kids.push_back(build_nf(b, p, flip(c)));
  NodeId head = b.terminal({LabelKind::Var, v.head, c});
  return b.inner(BinderKind::VarSet, v.binders, "", c, std::move(kids), head);
}

PolyTree tree_of_type(const Type& a, Color polarity) {
  TreeBuilder b;
  NodeId r = build_nf(b, nf(freshen(a)), polarity);
  return b.finish(r);
}

// ---------------------------------------------------------------- equality

namespace {

class TreeMatcher {
 public:
  TreeMatcher(const PolyTree& e, const PolyTree& f) : e_(e), f_(f) {}

  bool run() { return e_.polarity == f_.polarity && node(e_.root, f_.root, {}); }

 private:
  struct Scope {
    std::vector<std::string> left, right;
  };
  using Key = std::tuple<bool, int, int, std::size_t, std::size_t, std::string>;

  const PolyTree& e_;
  const PolyTree& f_;
  std::map<std::string, std::string> fwd_, bwd_;
  std::vector<std::string> log_;

  static const Scope* owner(const std::vector<Scope>& scopes, const std::string& x, bool left) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto& v = left ? it->left : it->right;
      if (std::find(v.begin(), v.end(), x) != v.end()) return &*it;
    }
    return nullptr;
  }

  bool name(const std::vector<Scope>& scopes, const std::string& x, const std::string& y) {
    const Scope* sx = owner(scopes, x, true);
    const Scope* sy = owner(scopes, y, false);
    if (!sx && !sy) return x == y;
    if (!sx || !sy || sx != sy) return false;
    auto f = fwd_.find(x);
    auto g = bwd_.find(y);
    if (f != fwd_.end() || g != bwd_.end()) return f != fwd_.end() && f->second == y;
    fwd_[x] = y;
    bwd_[y] = x;
    log_.push_back(x);
    return true;
  }

  void undo(std::size_t mark) {
    while (log_.size() > mark) {
      std::string x = log_.back();
      log_.pop_back();
      bwd_.erase(fwd_[x]);
      fwd_.erase(x);
    }
  }

  Key key(const PolyTree& t, NodeId n) const {
    const Node& x = t[n];
    if (x.terminal) return {true, static_cast<int>(x.label.kind), static_cast<int>(x.color), 1, 0, ""};
    return {false, static_cast<int>(x.binder), static_cast<int>(x.color), preorder(t, n).size(), x.children.size(),
            std::to_string(x.vars.size())};
  }

  bool node(NodeId a, NodeId b, std::vector<Scope> scopes) {
    const Node& x = e_[a];
    const Node& y = f_[b];
    if (x.terminal != y.terminal || x.color != y.color) return false;
    if (x.terminal) return x.label.kind == y.label.kind && name(scopes, x.label.name, y.label.name);
    if (x.binder != y.binder || x.vars.size() != y.vars.size() || x.children.size() != y.children.size())
      return false;
    Scope s{x.vars, y.vars};
    if (!x.anchor.empty()) {
      s.left.push_back(x.anchor);
      s.right.push_back(y.anchor);
    }
    scopes.push_back(s);
    std::size_t mark = log_.size();
    if (!x.anchor.empty() && !name(scopes, x.anchor, y.anchor)) {
      undo(mark);
      return false;
    }
    if (!node(x.head, y.head, scopes)) {
      undo(mark);
      return false;
    }
    std::vector<Key> ka, kb;
    for (NodeId c : x.children) ka.push_back(key(e_, c));
    for (NodeId c : y.children) kb.push_back(key(f_, c));
    std::vector<bool> used(y.children.size(), false);
    bool ok = kids(x, y, ka, kb, 0, used, scopes);
    if (ok) {
      for (auto& v : x.vars)
        if (!fwd_.count(v)) ok = false;
    }
    if (!ok) undo(mark);
    return ok;
  }

  bool kids(const Node& x, const Node& y, const std::vector<Key>& ka, const std::vector<Key>& kb, std::size_t i,
            std::vector<bool>& used, const std::vector<Scope>& scopes) {
    if (i == x.children.size()) return true;
    for (std::size_t j = 0; j < y.children.size(); ++j) {
      if (used[j] || ka[i] != kb[j]) continue;
      std::size_t mark = log_.size();
      if (node(x.children[i], y.children[j], scopes)) {
        used[j] = true;
        if (kids(x, y, ka, kb, i + 1, used, scopes)) return true;
        used[j] = false;
      }
      undo(mark);
    }
    return false;
  }
};

}  // namespace

bool tree_equal(const PolyTree& e, const PolyTree& f) { return TreeMatcher(e, f).run(); }

bool is_simple(const PolyTree& e) {
  for (NodeId n : preorder(e))
    if (!e[n].terminal && !e[n].vars.empty()) return false;
  return true;
}

// ---------------------------------------------------------------- translations

static Mono tau_node(const PolyTree& e, NodeId n);

static Mono tau_product(const PolyTree& e, NodeId n) {
  const Node& x = e[n];
  if (x.terminal) return mono::one();  // a bare anchor marker: empty product
  std::vector<Mono> parts;
  for (NodeId c : x.children) parts.push_back(tau_node(e, c));
  Mono body = mono::prod(parts);
  if (!x.vars.empty()) return mono::exists(x.vars, body);
  return body;
}

static Mono tau_node(const PolyTree& e, NodeId n) {
  const Node& x = e[n];
  if (x.terminal) return mono::var(x.label.name);
  if (x.binder == BinderKind::VarSet) {
    if (!x.vars.empty()) throw std::invalid_argument("tau: tree is not simple (binder " + x.vars[0] + ")");
    Mono out = tau_node(e, x.head);
    for (auto it = x.children.rbegin(); it != x.children.rend(); ++it) out = mono::arrow(tau_node(e, *it), out);
    return out;
  }
  Mono body;
  if (x.binder == BinderKind::MuAnchor) {
    std::vector<Mono> summands;
    for (NodeId c : x.children) summands.push_back(tau_product(e, c));
    body = mono::sum(summands);
  } else {
    if (x.children.size() != 1) throw std::invalid_argument("tau: malformed nu-anchor");
    const Node& c = e[x.children[0]];
    if (!c.terminal && !c.vars.empty()) throw std::invalid_argument("tau: tree is not simple");
    body = tau_product(e, x.children[0]);
  }
  if (!occurs_free(body, x.anchor)) return body;
  return x.binder == BinderKind::MuAnchor ? mono::mu(x.anchor, body) : mono::nu(x.anchor, body);
}

Mono tau(const PolyTree& e) {
  if (!is_simple(e)) throw std::invalid_argument("tau: tree is not simple");
  return tau_node(e, e.root);
}

static Type type_node(const PolyTree& e, NodeId n) {
  const Node& x = e[n];
  if (x.terminal) {
    if (x.label.kind != LabelKind::Var) throw std::invalid_argument("type_of_tree: anchor label present");
    return var(x.label.name);
  }
  if (x.binder != BinderKind::VarSet) throw std::invalid_argument("type_of_tree: anchor node present");
  std::vector<Type> ps;
  for (NodeId c : x.children) ps.push_back(type_node(e, c));
  return forall(x.vars, arrows(ps, type_node(e, x.head)));
}

Type type_of_tree(const PolyTree& e) { return type_node(e, e.root); }

PolyTree swap_colors(const PolyTree& e) {
  PolyTree out = e;
  out.polarity = flip(e.polarity);
  for (auto& n : out.nodes) {
    n.color = flip(n.color);
    n.label.color = flip(n.label.color);
  }
  return out;
}

// ---------------------------------------------------------------- validation

void validate(const PolyTree& e) {
  auto fail = [](const std::string& m) { throw std::logic_error("invalid tree: " + m); };
  if (e.root < 0 || e.root >= static_cast<NodeId>(e.nodes.size())) fail("bad root");
  if (e[e.root].color != e.polarity) fail("root color differs from polarity");
  std::vector<int> seen(e.nodes.size(), 0);
  std::set<std::string> binders;
  std::map<std::string, NodeId> anchors;
  for (NodeId n : preorder(e)) {
    if (seen[n]++) fail("node reached twice");
    const Node& x = e[n];
    if (x.terminal) {
      if (x.label.color != x.color) fail("terminal color mismatch");
      continue;
    }
    for (auto& v : x.vars)
      if (!binders.insert(v).second) fail("duplicate binder " + v);
    if (x.binder == BinderKind::VarSet && x.vars.empty() && x.children.empty()) fail("uncollapsed trivial node");
    if (e[x.head].color != x.color) fail("head color does not match node color");
    for (NodeId c : x.children)
      if (e[c].color != flip(x.color)) fail("child color does not alternate");
    if (x.binder != BinderKind::VarSet) {
      if (!x.vars.empty()) fail("anchor with variables");
      if (!anchors.emplace(x.anchor, n).second) fail("duplicate anchor " + x.anchor);
      LabelKind mark = x.binder == BinderKind::MuAnchor ? LabelKind::Bullet : LabelKind::Triangle;
      const Node& h = e[x.head];
      if (!h.terminal || h.label.kind != mark || h.label.name != x.anchor) fail("anchor head mismatch");
      if (x.binder == BinderKind::NuAnchor && x.children.size() != 1) fail("nu-anchor needs one child");
      for (NodeId c : x.children) {
        const Node& k = e[c];
        const Node& kh = k.terminal ? k : e[k.head];
        if (!kh.terminal || kh.label.kind != mark || kh.label.name != x.anchor) fail("anchor child head mismatch");
      }
    }
  }
  // Every anchor marker must sit inside its anchor.
  auto par = parents(e);
  for (NodeId n : preorder(e)) {
    const Node& x = e[n];
    if (!x.terminal || x.label.kind == LabelKind::Var) continue;
    auto it = anchors.find(x.label.name);
    if (it == anchors.end() || !is_ancestor_or_self(par, it->second, n)) fail("stray anchor marker");
  }
}

// ---------------------------------------------------------------- DOT

std::string label_text(const Label& l) {
  switch (l.kind) {
    case LabelKind::Var: return l.name;
    case LabelKind::Bullet: return "•";
    case LabelKind::Triangle: return "▲";
  }
  return "?";
}

static std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string to_dot(const PolyTree& e, DotOptions opts) {
  auto order = preorder(e);
  std::map<NodeId, std::string> id;
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = "n" + std::to_string(i);
  std::set<NodeId> modular;
  if (opts.modular) modular = modular_nodes(e);
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (NodeId n : order) {
    const Node& x = e[n];
    os << "  " << id[n] << " [";
    if (x.terminal) {
      std::string text = dot_escape(label_text(x.label));
      const char* col = x.color == Color::Blue ? "blue" : "red";
      if (opts.modular && modular.count(n)) {
        os << "label=<<U>" << text << "</U>>, fontcolor=\"dark" << col << "\"";
      } else {
        os << "label=\"" << text << "\", fontcolor=\"" << col << "\"";
      }
    } else {
      std::string text;
      if (x.binder == BinderKind::MuAnchor) text = "•";
      else if (x.binder == BinderKind::NuAnchor) text = "▲";
      else if (x.vars.empty()) text = "∅";
      for (std::size_t i = 0; i < x.vars.size(); ++i) text += (i ? " " : "") + x.vars[i];
      os << "label=\"" << dot_escape(text) << "\"";
    }
    os << "];\n";
  }
  for (NodeId n : order) {
    const Node& x = e[n];
    if (x.terminal) continue;
    for (NodeId c : x.children) os << "  " << id[c] << " -> " << id[n] << " [dir=none];\n";
    os << "  " << id[x.head] << " -> " << id[n] << " [dir=none];\n";
  }
  if (opts.pairs) {
    for (auto& [a, b] : modular_pairs(e))
      os << "  " << id[a] << " -> " << id[b] << " [style=dashed, constraint=false, dir=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace lam2
