#include "lam2/normform.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "lam2/polytree.hpp"

namespace lam2 {

NfView view(const Type& t) {
  NfView v;
  Type u = t;
  while (u->kind == TypeNode::Forall) {
    v.binders.push_back(u->name);
    u = u->a;
  }
  while (u->kind == TypeNode::Arrow) {
    v.premises.push_back(u->a);
    u = u->b;
  }
  if (u->kind != TypeNode::Var) throw std::invalid_argument("not in normal form: " + print_type(t));
  v.head = u->name;
  return v;
}

Type build(const NfView& v) {
  std::vector<Type> ps = v.premises;
  return forall(v.binders, arrows(ps, var(v.head)));
}

Type nf(const Type& a) {
  switch (a->kind) {
    case TypeNode::Var:
      return a;
    case TypeNode::Forall: {
      Type body = nf(a->a);
      if (!occurs_free(body, a->name)) return body;
      return forall(a->name, body);
    }
    case TypeNode::Arrow: {
      Type dom = nf(a->a);
      NfView cod = view(nf(a->b));
      auto dom_fv = free_vars(dom);
      for (auto& y : cod.binders) {
        if (!dom_fv.count(y)) continue;
        std::set<std::string> taken = dom_fv;
        auto cod_fv = free_vars(build(cod));
        taken.insert(cod_fv.begin(), cod_fv.end());
        for (auto& b : cod.binders) taken.insert(b);
        NameSupply ns(taken);
        std::string z = ns.fresh(y);
        for (auto& p : cod.premises) p = subst(p, y, var(z));
        if (cod.head == y) cod.head = z;
        y = z;
      }
      cod.premises.insert(cod.premises.begin(), dom);
      return build(cod);
    }
  }
  return a;
}

bool is_nf(const Type& a) {
  NfView v;
  try {
    v = view(a);
  } catch (const std::invalid_argument&) {
    return false;
  }
  Type body = arrows(v.premises, var(v.head));
  auto fvs = free_vars(body);
  for (auto& y : v.binders)
    if (!fvs.count(y)) return false;
  for (auto& p : v.premises)
    if (!is_nf(p)) return false;
  return true;
}

// ---------------------------------------------------------------- the ~ relation

namespace {

using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::string>;

std::size_t nf_depth(const Type& t) {
  NfView v = view(t);
  std::size_t d = 0;
  for (auto& p : v.premises) d = std::max(d, 1 + nf_depth(p));
  return d;
}

// Bijection between binders of the two sides, built incrementally with an undo log.
class Matcher {
 public:
  bool match(const Type& a, const Type& b) { return node(a, b, {}); }

 private:
  struct Scope {
    std::vector<std::string> left, right;
  };
  std::map<std::string, std::string> fwd_, bwd_;
  std::vector<std::string> log_;

  static bool in(const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  }

  // Scopes list binders from the outermost node inward; names are unique after freshening.
  static const Scope* owner(const std::vector<Scope>& scopes, const std::string& x, bool left) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
      if (in(left ? it->left : it->right, x)) return &*it;
    return nullptr;
  }

  bool var(const std::vector<Scope>& scopes, const std::string& x, const std::string& y) {
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

  Key key(const Type& t, const std::vector<Scope>& scopes, bool left) const {
    NfView v = view(t);
    std::string h = owner(scopes, v.head, left) || in(v.binders, v.head) ? "" : v.head;
    return {v.premises.size(), v.binders.size(), nf_depth(t), h};
  }

  bool node(const Type& a, const Type& b, std::vector<Scope> scopes) {
    NfView va = view(a), vb = view(b);
    if (va.binders.size() != vb.binders.size() || va.premises.size() != vb.premises.size()) return false;
    scopes.push_back({va.binders, vb.binders});
    std::size_t mark = log_.size();
    if (!var(scopes, va.head, vb.head)) {
      undo(mark);
      return false;
    }
    std::vector<Key> ka, kb;
    for (auto& p : va.premises) ka.push_back(key(p, scopes, true));
    for (auto& p : vb.premises) kb.push_back(key(p, scopes, false));
    std::vector<std::size_t> order(va.premises.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return ka[i] < ka[j]; });
    std::vector<bool> used(vb.premises.size(), false);
    bool ok = premises(va, vb, ka, kb, order, 0, used, scopes);
    if (ok) {
      // Every binder occurs, so a complete match pairs all of them.
      for (auto& y : va.binders)
        if (!fwd_.count(y)) ok = false;
    }
    if (!ok) undo(mark);
    return ok;
  }

  bool premises(const NfView& va, const NfView& vb, const std::vector<Key>& ka, const std::vector<Key>& kb,
                const std::vector<std::size_t>& order, std::size_t k, std::vector<bool>& used,
                const std::vector<Scope>& scopes) {
    if (k == order.size()) return true;
    std::size_t i = order[k];
    for (std::size_t j = 0; j < vb.premises.size(); ++j) {
      if (used[j] || ka[i] != kb[j]) continue;
      std::size_t mark = log_.size();
      if (node(va.premises[i], vb.premises[j], scopes)) {
        used[j] = true;
        if (premises(va, vb, ka, kb, order, k + 1, used, scopes)) return true;
        used[j] = false;
      }
      undo(mark);
    }
    return false;
  }
};

}  // namespace

bool sim(const Type& a, const Type& b) { return Matcher().match(a, b); }

bool iso_beta_eta(const Type& a, const Type& b) {
  bool by_nf = sim(nf(freshen(a)), nf(freshen(b)));
  bool by_tree = tree_equal(tree_of_type(a, Color::Blue), tree_of_type(b, Color::Blue));
  if (by_nf != by_tree)
    throw std::logic_error("normal-form and tree decisions disagree on " + print_type(a) + " vs " + print_type(b));
  return by_nf;
}

}  // namespace lam2
