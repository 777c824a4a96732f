#include "lam2/coherence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace lam2 {

const char* kappa_name(Kappa k) {
  switch (k) {
    case Kappa::Zero: return "0";
    case Kappa::One: return "1";
    case Kappa::Infinite: return "inf";
  }
  return "?";
}

namespace {

// Pairs of distinct parallel modular nodes, each reported once.
std::vector<std::pair<NodeId, NodeId>> parallel_modular(const PolyTree& e) {
  auto mod = modular_nodes(e);
  auto par = parents(e);
  std::vector<std::pair<NodeId, NodeId>> out;
  for (auto a = mod.begin(); a != mod.end(); ++a)
    for (auto b = std::next(a); b != mod.end(); ++b)
      if (par[*a] >= 0 && par[*a] == par[*b]) out.emplace_back(*a, *b);
  return out;
}

}  // namespace

bool coherent_pair(const PolyTree& e, const std::string& x, Color c, const std::string& y, Color d) {
  binding_node(e, x);
  binding_node(e, y);
  Label lx{LabelKind::Var, x, flip(c)}, ly{LabelKind::Var, y, flip(d)};
  for (auto& [a, b] : parallel_modular(e)) {
    const Label& la = e[a].label;
    const Label& lb = e[b].label;
    if ((la == lx && lb == ly) || (la == ly && lb == lx)) return false;
  }
  return true;
}

bool is_phi_coherent(const PolyTree& e, const Valuation& phi) {
  auto bv = bound_variables(e);
  for (auto& x : bv) {
    auto it = phi.find(x);
    if (it == phi.end() || !is_c_eliminable(e, x, it->second)) return false;
  }
  for (auto& [a, b] : parallel_modular(e)) {
    const Label& la = e[a].label;
    const Label& lb = e[b].label;
    if (la.name == lb.name) continue;
    if (la.color == flip(phi.at(la.name)) && lb.color == flip(phi.at(lb.name))) return false;
  }
  return true;
}

std::vector<std::pair<Literal, Literal>> coherence_clauses(const PolyTree& e) {
  std::vector<std::pair<Literal, Literal>> out;
  for (auto& x : bound_variables(e))
    for (Color c : {Color::Blue, Color::Red})
      if (!is_c_eliminable(e, x, c)) out.push_back({{x, flip(c)}, {x, flip(c)}});
  // Parallel modular α: X^a, β: Y^b forbid X^ā together with Y^b̄, i.e. require X^a or Y^b.
  std::set<std::tuple<std::string, int, std::string, int>> seen;
  for (auto& [a, b] : parallel_modular(e)) {
    Literal p{e[a].label.name, e[a].label.color}, q{e[b].label.name, e[b].label.color};
    if (p.var == q.var) continue;
    if (q.var < p.var) std::swap(p, q);
    if (seen.emplace(p.var, int(p.color), q.var, int(q.color)).second) out.push_back({p, q});
  }
  return out;
}

ValuationSearch find_valuation_detailed(const PolyTree& e) {
  auto bv = bound_variables(e);
  const int n = static_cast<int>(bv.size());
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[bv[i]] = i;
  auto lit = [&](const Literal& l) { return 2 * index.at(l.var) + (l.color == Color::Red ? 1 : 0); };
  auto neg = [](int v) { return v ^ 1; };

  std::vector<std::vector<int>> adj(2 * n);
  for (auto& [p, q] : coherence_clauses(e)) {
    int a = lit(p), b = lit(q);
    adj[neg(a)].push_back(b);
    if (a != b) adj[neg(b)].push_back(a);
  }

  // Tarjan's algorithm.
  std::vector<int> comp(2 * n, -1), low(2 * n), num(2 * n, -1), stack;
  std::vector<bool> on(2 * n, false);
  int counter = 0, ncomp = 0;
  std::function<void(int)> dfs = [&](int v) {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (int w : adj[v]) {
      if (num[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (int v = 0; v < 2 * n; ++v)
    if (num[v] < 0) dfs(v);

  ValuationSearch res;
  for (int i = 0; i < n; ++i) {
    if (comp[2 * i] == comp[2 * i + 1]) {
      for (int v = 0; v < 2 * n; ++v)
        if (comp[v] == comp[2 * i]) res.conflict.push_back({bv[v / 2], v % 2 ? Color::Red : Color::Blue});
      return res;
    }
  }

  // Condensation, then sinks first; ties go to the component holding the earliest
  // literal coloured like its binding node, then the earliest opposite one.
  std::vector<int> off(2 * n);
  for (int v = 0; v < 2 * n; ++v) {
    Color c = v % 2 ? Color::Red : Color::Blue;
    off[v] = e[binding_node(e, bv[v / 2])].color == c ? 0 : 1;
  }
  std::vector<std::set<int>> succ(ncomp);
  std::vector<std::vector<int>> pred(ncomp), members(ncomp);
  for (int v = 0; v < 2 * n; ++v) {
    members[comp[v]].push_back(v);
    for (int w : adj[v])
      if (comp[v] != comp[w] && succ[comp[v]].insert(comp[w]).second) pred[comp[w]].push_back(comp[v]);
  }
  std::vector<int> key(ncomp), pending(ncomp);
  for (int k = 0; k < ncomp; ++k) {
    key[k] = 2 * n;
    for (int v : members[k]) key[k] = std::min(key[k], off[v] * n + v / 2);
    pending[k] = static_cast<int>(succ[k].size());
  }
  using Entry = std::pair<int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> ready;
  for (int k = 0; k < ncomp; ++k)
    if (pending[k] == 0) ready.push({key[k], k});
  std::vector<int> value(n, -1);
  while (!ready.empty()) {
    int k = ready.top().second;
    ready.pop();
    for (int v : members[k])
      if (value[v / 2] < 0) value[v / 2] = v % 2;
    for (int p : pred[k])
      if (--pending[p] == 0) ready.push({key[p], p});
  }
  Valuation phi;
  for (int i = 0; i < n; ++i) phi[bv[i]] = value[i] == 1 ? Color::Red : Color::Blue;
  if (!is_phi_coherent(e, phi)) throw std::logic_error("constructed valuation is not coherent");
  res.valuation = phi;
  return res;
}

std::optional<Valuation> find_valuation(const PolyTree& e) { return find_valuation_detailed(e).valuation; }

bool is_coherent(const PolyTree& e) { return find_valuation(e).has_value(); }

bool brute_force_coherent(const PolyTree& e) {
  auto bv = bound_variables(e);
  if (bv.size() > 20) throw std::invalid_argument("too many bound variables for enumeration");
  auto clauses = coherence_clauses(e);
  for (unsigned long m = 0; m < (1ul << bv.size()); ++m) {
    std::map<std::string, Color> phi;
    for (std::size_t i = 0; i < bv.size(); ++i) phi[bv[i]] = (m >> i) & 1 ? Color::Red : Color::Blue;
    bool ok = true;
    for (auto& [p, q] : clauses)
      if (phi[p.var] != p.color && phi[q.var] != q.color) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------- alternating paths

std::vector<Move> down_moves(const PolyTree& e) {
  auto mod = modular_nodes(e);
  std::vector<Move> out;
  for (auto& x : bound_variables(e)) {
    auto blues = occurrences_of(e, x, Color::Blue);
    auto reds = occurrences_of(e, x, Color::Red);
    for (NodeId a : blues)
      for (NodeId b : reds) {
        if (mod.count(b)) out.emplace_back(a, b);
        if (mod.count(a)) out.emplace_back(b, a);
      }
  }
  return out;
}

std::vector<Move> up_moves(const PolyTree& e) {
  auto mod = modular_nodes(e);
  auto par = parents(e);
  std::set<std::string> bound;
  for (auto& v : bound_variables(e)) bound.insert(v);
  std::vector<Move> out;
  for (NodeId a : mod) {
    NodeId g = par[a];
    // Only nodes two edges below their binder start an up-move; see README.
    if (g == binding_node(e, e[a].label.name)) continue;
    for (NodeId b : preorder(e, g)) {
      const Node& t = e[b];
      if (b != a && t.terminal && t.label.kind == LabelKind::Var && bound.count(t.label.name)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::optional<std::vector<NodeId>> find_cyclic_alternating_path(const PolyTree& e) {
  std::map<NodeId, std::vector<NodeId>> down, up;
  for (auto& [a, b] : down_moves(e)) down[a].push_back(b);
  for (auto& [a, b] : up_moves(e)) up[a].push_back(b);
  // Edges of Down;Up, keeping the middle node.
  std::map<NodeId, std::vector<std::pair<NodeId, NodeId>>> step;
  std::set<NodeId> nodes;
  for (auto& [a, bs] : down)
    for (NodeId b : bs)
      for (NodeId c : up[b]) {
        step[a].push_back({b, c});
        nodes.insert(a);
        nodes.insert(c);
      }
  std::map<NodeId, int> state;
  std::vector<std::pair<NodeId, NodeId>> path;  // (via, node) along the dfs stack
  std::optional<std::vector<NodeId>> found;
  std::function<bool(NodeId)> dfs = [&](NodeId a) -> bool {
    state[a] = 1;
    for (auto& [b, c] : step[a]) {
      if (state[c] == 1) {
        std::vector<NodeId> cyc;
        auto it = std::find_if(path.begin(), path.end(), [&](auto& p) { return p.second == c; });
        cyc.push_back(c);
        for (auto j = std::next(it); j != path.end(); ++j) {
          cyc.push_back(j->first);
          cyc.push_back(j->second);
        }
        cyc.push_back(b);
        cyc.push_back(c);
        found = cyc;
        return true;
      }
      if (state[c] == 0) {
        path.push_back({b, c});
        if (dfs(c)) return true;
        path.pop_back();
      }
    }
    state[a] = 2;
    return false;
  };
  for (NodeId a : nodes) {
    if (state[a] != 0) continue;
    path.assign(1, {-1, a});
    if (dfs(a)) return found;
  }
  return std::nullopt;
}

bool has_cyclic_alternating_path(const PolyTree& e) { return find_cyclic_alternating_path(e).has_value(); }

Kappa characteristic(const PolyTree& e) {
  if (!is_coherent(e)) return Kappa::Infinite;
  return has_cyclic_alternating_path(e) ? Kappa::One : Kappa::Zero;
}

Kappa characteristic_of_type(const Type& a) { return characteristic(tree_of_type(a, Color::Blue)); }

}  // namespace lam2
