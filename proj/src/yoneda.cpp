#include "lam2/yoneda.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "lam2/coherence.hpp"

namespace lam2 {

NodeId binding_node(const PolyTree& e, const std::string& x) {
  for (NodeId n = 0; n < static_cast<NodeId>(e.nodes.size()); ++n) {
    const Node& v = e[n];
    if (!v.terminal && std::find(v.vars.begin(), v.vars.end(), x) != v.vars.end()) return n;
  }
  throw std::invalid_argument("unknown bound variable " + x);
}

NodeId head_node(const PolyTree& e, const std::string& x) { return e[binding_node(e, x)].head; }

std::size_t distance(const PolyTree& e, NodeId n, NodeId m) {
  auto par = parents(e);
  std::vector<NodeId> up;
  for (NodeId a = n; a >= 0; a = par[a]) up.push_back(a);
  std::size_t dm = 0;
  for (NodeId b = m; b >= 0; b = par[b], ++dm) {
    auto it = std::find(up.begin(), up.end(), b);
    if (it != up.end()) return dm + static_cast<std::size_t>(it - up.begin());
  }
  throw std::invalid_argument("nodes are not in the same tree");
}

namespace {

// Per-tree lookup tables shared by the analyses below.
struct Index {
  std::vector<NodeId> parent;
  std::map<std::string, NodeId> binder;

  explicit Index(const PolyTree& e) : parent(parents(e)) {
    for (NodeId n = 0; n < static_cast<NodeId>(e.nodes.size()); ++n)
      for (auto& v : e[n].vars) binder[v] = n;
  }
};

bool modular_at(const PolyTree& e, const Index& ix, NodeId n) {
  const Node& t = e[n];
  auto b = ix.binder.find(t.label.name);
  NodeId r = b->second;
  if (e[r].head == n) return false;
  NodeId p = ix.parent[n];
  if (p == r) return true;  // distance 1: siblings with the same label are allowed, see README
  if (p < 0 || ix.parent[p] != r) return false;
  const Node& pn = e[p];
  auto same = [&](NodeId s) { return s != n && e[s].terminal && e[s].label == t.label; };
  for (NodeId s : pn.children)
    if (same(s)) return false;
  return !same(pn.head);
}

bool bound_var_terminal(const PolyTree& e, const Index& ix, NodeId n) {
  const Node& t = e[n];
  return t.terminal && t.label.kind == LabelKind::Var && ix.binder.count(t.label.name);
}

}  // namespace

bool is_modular(const PolyTree& e, NodeId n) {
  Index ix(e);
  if (n < 0 || n >= static_cast<NodeId>(e.nodes.size()) || !bound_var_terminal(e, ix, n))
    throw std::invalid_argument("is_modular: not a terminal labelled with a bound variable");
  return modular_at(e, ix, n);
}

std::set<NodeId> modular_nodes(const PolyTree& e) {
  Index ix(e);
  std::set<NodeId> out;
  for (NodeId n = 0; n < static_cast<NodeId>(e.nodes.size()); ++n)
    if (bound_var_terminal(e, ix, n) && modular_at(e, ix, n)) out.insert(n);
  return out;
}

std::vector<NodeId> occurrences_of(const PolyTree& e, const std::string& x, Color c) {
  std::vector<NodeId> out;
  for (NodeId n : preorder(e)) {
    const Node& t = e[n];
    if (t.terminal && t.label.kind == LabelKind::Var && t.label.name == x && t.label.color == c) out.push_back(n);
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> modular_pairs(const PolyTree& e) {
  auto mod = modular_nodes(e);
  std::vector<std::pair<NodeId, NodeId>> out;
  for (auto& x : bound_variables(e)) {
    auto blues = occurrences_of(e, x, Color::Blue);
    auto reds = occurrences_of(e, x, Color::Red);
    for (NodeId a : blues)
      for (NodeId b : reds)
        if (mod.count(a) || mod.count(b)) out.emplace_back(a, b);
  }
  return out;
}

bool is_c_eliminable(const PolyTree& e, const std::string& x, Color c) {
  binding_node(e, x);
  auto mod = modular_nodes(e);
  for (NodeId n : occurrences_of(e, x, flip(c)))
    if (!mod.count(n)) return false;
  return true;
}

bool is_eliminable(const PolyTree& e, const std::string& x) {
  binding_node(e, x);
  auto mod = modular_nodes(e);
  for (NodeId a : occurrences_of(e, x, Color::Blue))
    for (NodeId b : occurrences_of(e, x, Color::Red))
      if (!mod.count(a) && !mod.count(b)) return false;
  return true;
}

// ---------------------------------------------------------------- decomposition

static bool is_var(const PolyTree& e, NodeId n, const std::string& x, Color c) {
  const Node& t = e[n];
  return t.terminal && t.label.kind == LabelKind::Var && t.label.name == x && t.label.color == c;
}

Decomposition decompose(const PolyTree& e, const std::string& x, Color c) {
  if (!is_c_eliminable(e, x, c))
    throw std::invalid_argument(x + " is not " + color_name(c) + "-eliminable");
  Decomposition d;
  d.x = x;
  d.color = c;
  d.root = binding_node(e, x);
  const Node& r = e[d.root];
  d.mu_case = r.color == c;
  d.head = r.head;
  Color other = flip(c);
  for (NodeId ch : r.children) {
    const Node& k = e[ch];
    if (d.mu_case) {
      if (is_var(e, ch, x, other)) {
        d.g.push_back({ch, true, {}, {}, ch, -1});
        continue;
      }
      if (!k.terminal && is_var(e, k.head, x, other)) {
        d.g.push_back({ch, false, k.vars, k.children, k.head, -1});
        continue;
      }
    } else if (!k.terminal) {
      auto it = std::find_if(k.children.begin(), k.children.end(), [&](NodeId s) { return is_var(e, s, x, other); });
      if (it != k.children.end()) {
        Decomposition::G g{ch, false, k.vars, {}, *it, k.head};
        for (NodeId s : k.children)
          if (s != *it) g.d.push_back(s);
        d.g.push_back(g);
        continue;
      }
    }
    d.f.push_back(ch);
  }
  return d;
}

PolyTree reassemble(const PolyTree& e, const Decomposition& d) {
  TreeBuilder b;
  const Node& r = e[d.root];
  std::vector<NodeId> kids;
  for (auto& g : d.g) {
    if (g.collapsed) {
      kids.push_back(b.terminal(e[g.x_node].label));
      continue;
    }
    const Node& k = e[g.node];
    std::vector<NodeId> ks;
    NodeId head;
    if (d.mu_case) {
      for (NodeId s : g.d) ks.push_back(b.copy(e, s));
      head = b.terminal(e[g.x_node].label);
    } else {
      ks.push_back(b.terminal(e[g.x_node].label));
      for (NodeId s : g.d) ks.push_back(b.copy(e, s));
      head = b.copy(e, g.e);
    }
    kids.push_back(b.inner(BinderKind::VarSet, g.z, "", k.color, ks, head));
  }
  for (NodeId f : d.f) kids.push_back(b.copy(e, f));
  NodeId h = b.copy(e, d.head);
  return b.finish(b.inner(r.binder, r.vars, r.anchor, r.color, kids, h));
}

// ---------------------------------------------------------------- reduction

namespace {

// Copies `src` at `n`, renaming every name found in `ren`.
NodeId copy_renamed(TreeBuilder& b, const PolyTree& src, NodeId n, const std::map<std::string, std::string>& ren) {
  auto rn = [&](const std::string& s) {
    auto it = ren.find(s);
    return it == ren.end() ? s : it->second;
  };
  const Node& s = src[n];
  if (s.terminal) {
    Label l = s.label;
    l.name = rn(l.name);
    return b.terminal(l);
  }
  std::vector<NodeId> kids;
  for (NodeId c : s.children) kids.push_back(copy_renamed(b, src, c, ren));
  NodeId h = copy_renamed(b, src, s.head, ren);
  std::vector<std::string> vars;
  for (auto& v : s.vars) vars.push_back(rn(v));
  return b.inner(s.binder, vars, s.anchor.empty() ? "" : rn(s.anchor), s.color, kids, h);
}

// The anchor tree substituted for X^c.
PolyTree build_anchor(const PolyTree& e, const Decomposition& d) {
  TreeBuilder b;
  const std::string& a = d.x;
  Color c = d.color, cb = flip(c);
  LabelKind mark = d.mu_case ? LabelKind::Bullet : LabelKind::Triangle;
  auto hook = [&](NodeId n) -> std::optional<NodeId> {
    if (is_var(e, n, d.x, c)) return b.terminal({mark, a, c});
    return std::nullopt;
  };
  if (d.mu_case) {
    std::vector<NodeId> kids;
    for (auto& g : d.g) {
      std::vector<NodeId> ds;
      for (NodeId s : g.d) ds.push_back(b.copy(e, s, hook));
      NodeId h = b.terminal({mark, a, cb});
      kids.push_back(b.inner(BinderKind::VarSet, g.z, "", cb, ds, h));
    }
    NodeId h = b.terminal({mark, a, c});
    return b.finish(b.inner(BinderKind::MuAnchor, {}, a, c, kids, h));
  }
  std::vector<NodeId> ks;
  for (auto& g : d.g) {
    std::vector<NodeId> ds;
    for (NodeId s : g.d) ds.push_back(b.copy(e, s, hook));
    NodeId h = b.copy(e, g.e, hook);
    ks.push_back(b.inner(BinderKind::VarSet, g.z, "", c, ds, h));
  }
  NodeId mid = b.inner(BinderKind::VarSet, {}, "", cb, ks, b.terminal({mark, a, cb}));
  NodeId h = b.terminal({mark, a, c});
  return b.finish(b.inner(BinderKind::NuAnchor, {}, a, c, {mid}, h));
}

std::vector<std::string> names_bound_in(const PolyTree& t) {
  std::vector<std::string> out;
  for (NodeId n : preorder(t)) {
    const Node& x = t[n];
    if (x.terminal) continue;
    out.insert(out.end(), x.vars.begin(), x.vars.end());
    if (!x.anchor.empty()) out.push_back(x.anchor);
  }
  return out;
}

}  // namespace

Step reduce_step_traced(const PolyTree& e, const std::string& x, Color c) {
  Decomposition d = decompose(e, x, c);
  PolyTree anchor = build_anchor(e, d);
  auto anchor_names = names_bound_in(anchor);

  NameSupply supply(all_names(e));
  Step out;
  for (auto& v : bound_variables(e))
    if (v != x) out.ancestry[v] = v;
  // Names bound inside the eliminated children survive only through anchor copies.
  for (auto& g : d.g) {
    std::vector<NodeId> gone = preorder(e, g.node);
    for (NodeId n : gone)
      for (auto& v : e[n].vars) out.ancestry.erase(v);
  }

  TreeBuilder b;
  int copies = 0;
  auto theta = [&](NodeId n) -> std::optional<NodeId> {
    if (!is_var(e, n, x, c)) return std::nullopt;
    std::map<std::string, std::string> ren;
    if (copies++ > 0) {
      for (auto& v : anchor_names) ren[v] = supply.fresh(v);
    }
    for (auto& v : anchor_names) {
      auto it = ren.find(v);
      std::string now = it == ren.end() ? v : it->second;
      if (v != x) out.ancestry[now] = v;
    }
    return copy_renamed(b, anchor, anchor.root, ren);
  };

  const Node& r = e[d.root];
  std::vector<std::string> vars;
  for (auto& v : r.vars)
    if (v != x) vars.push_back(v);
  auto outer = [&](NodeId n) -> std::optional<NodeId> {
    if (n != d.root) return std::nullopt;
    std::vector<NodeId> kids;
    for (NodeId f : d.f) kids.push_back(b.copy(e, f, theta));
    NodeId h = b.copy(e, d.head, theta);
    return b.inner(BinderKind::VarSet, vars, "", r.color, kids, h);
  };
  out.tree = b.finish(b.copy(e, e.root, outer));
  // Drop ancestry entries whose variable was erased with the canceled part.
  auto bv = bound_variables(out.tree);
  std::set<std::string> live(bv.begin(), bv.end());
  for (auto it = out.ancestry.begin(); it != out.ancestry.end();) {
    if (!live.count(it->first)) it = out.ancestry.erase(it);
    else ++it;
  }
  return out;
}

PolyTree reduce_step(const PolyTree& e, const std::string& x, Color c) { return reduce_step_traced(e, x, c).tree; }

bool is_canceling(const PolyTree& e, const std::string& x, Color c) {
  Decomposition d = decompose(e, x, c);
  if (is_var(e, d.head, x, c)) return false;
  for (NodeId f : d.f)
    for (NodeId n : preorder(e, f))
      if (is_var(e, n, x, c)) return false;
  for (NodeId n : preorder(e, d.head))
    if (is_var(e, n, x, c)) return false;
  return true;
}

BigNat measure_with_base(const PolyTree& e, const BigNat& s) {
  BigNat total = 0;
  for (NodeId n : preorder(e)) {
    const Node& x = e[n];
    if (x.terminal || x.vars.empty()) continue;
    BigNat term = boost::multiprecision::pow(s, static_cast<unsigned>(terminal_count(e, n)));
    total += term * x.vars.size();
  }
  return total;
}

BigNat measure(const PolyTree& e) {
  BigNat k = terminal_count(e, e.root);
  return measure_with_base(e, k * k + 1);
}

// ---------------------------------------------------------------- strategies

namespace {

Reduction run(const PolyTree& e, const Valuation& phi, bool uniform, Policy policy, std::uint64_t seed) {
  Reduction red;
  red.result = e;
  std::map<std::string, std::string> origin;
  for (auto& v : bound_variables(e)) origin[v] = v;
  std::mt19937_64 rng(seed);
  BigNat before = measure(e);
  const std::size_t guard = 100000;
  while (true) {
    const PolyTree& cur = red.result;
    auto bv = bound_variables(cur);
    if (bv.empty()) break;
    if (red.trace.size() > guard) throw std::logic_error("reduction did not terminate");
    auto par = parents(cur);
    std::map<std::string, NodeId> where;
    for (NodeId n = 0; n < static_cast<NodeId>(cur.nodes.size()); ++n)
      for (auto& v : cur[n].vars) where[v] = n;
    auto color_of = [&](const std::string& v) { return phi.at(origin.at(v)); };

    std::vector<std::string> cand;
    if (uniform) {
      for (auto& v : bv) {
        NodeId r = where[v];
        // Later binders of a node lie in the scope of earlier ones.
        if (cur[r].vars.back() != v) continue;
        bool inner_free = true;
        for (NodeId n : preorder(cur, r))
          if (n != r && !cur[n].terminal && !cur[n].vars.empty()) inner_free = false;
        if (inner_free) cand.push_back(v);
      }
    } else if (policy == Policy::LeastCanceling) {
      for (auto& v : bv) {
        NodeId r = where[v];
        bool above = false;
        for (NodeId a = par[r]; a >= 0; a = par[a])
          if (!cur[a].vars.empty()) above = true;
        if (above && is_c_eliminable(cur, v, color_of(v)) && is_canceling(cur, v, color_of(v))) continue;
        cand.push_back(v);
      }
      if (cand.empty()) cand = bv;
    } else {
      cand = bv;
    }

    std::string pick;
    if ((uniform && seed != 0) || (!uniform && policy == Policy::Random)) {
      pick = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
    } else if (!uniform && policy == Policy::Innermost) {
      std::size_t best = 0;
      for (auto& v : cand) {
        std::size_t dv = depth_of(par, where[v]);
        if (pick.empty() || dv > best) pick = v, best = dv;
      }
    } else {
      std::size_t best = 0;
      for (auto& v : cand) {
        std::size_t dv = depth_of(par, where[v]);
        if (pick.empty() || dv < best) pick = v, best = dv;
      }
    }

    Color c = color_of(pick);
    if (!is_c_eliminable(cur, pick, c))
      throw std::logic_error("reduction stuck: " + pick + " is not " + color_name(c) + "-eliminable");
    Step st = reduce_step_traced(cur, pick, c);
    std::map<std::string, std::string> next;
    for (auto& [v, src] : st.ancestry) next[v] = origin.at(src);
    origin = std::move(next);
    BigNat after = measure(st.tree);
    red.trace.push_back({pick, c, before, after, st.ancestry});
    before = after;
    red.result = std::move(st.tree);
  }
  return red;
}

}  // namespace

Reduction standard_reduce(const PolyTree& e, const Valuation& phi, Policy policy, std::uint64_t seed) {
  if (!is_phi_coherent(e, phi)) throw std::invalid_argument("tree is not coherent for the given valuation");
  return run(e, phi, false, policy, seed);
}

Reduction uniform_reduce(const PolyTree& e, const Valuation& chi, std::uint64_t seed) {
  if (!is_phi_coherent(e, chi)) throw std::invalid_argument("tree is not coherent for the given skeleton");
  return run(e, chi, true, Policy::Innermost, seed);
}

}  // namespace lam2
