#include "lam2/finite.hpp"

#include <map>

namespace lam2 {

using K = MonoNode;

static bool is(const Mono& m, MonoNode::Kind k) { return m->kind == k; }

static Mono simp(const Mono& m);

static Mono make_sum(const std::vector<Mono>& parts) {
  std::vector<Mono> flat;
  for (auto& p : parts) {
    if (is(p, K::Zero)) continue;
    if (is(p, K::Sum)) flat.insert(flat.end(), p->parts.begin(), p->parts.end());
    else flat.push_back(p);
  }
  return mono::sum(flat);
}

static Mono make_prod(const std::vector<Mono>& parts) {
  std::vector<Mono> flat;
  for (auto& p : parts) {
    if (is(p, K::Zero)) return mono::zero();
    if (is(p, K::One)) continue;
    if (is(p, K::Prod)) flat.insert(flat.end(), p->parts.begin(), p->parts.end());
    else flat.push_back(p);
  }
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!is(flat[i], K::Sum)) continue;
    // A*(B+C) = A*B + A*C
    std::vector<Mono> summands;
    for (auto& s : flat[i]->parts) {
      std::vector<Mono> f = flat;
      f[i] = s;
      summands.push_back(make_prod(f));
    }
    return make_sum(summands);
  }
  return mono::prod(flat);
}

static Mono make_arrow(const Mono& a, const Mono& b) {
  if (is(a, K::Zero)) return mono::one();
  if (is(a, K::One)) return b;
  if (is(b, K::One)) return mono::one();
  if (is(a, K::Sum)) {
    std::vector<Mono> factors;
    for (auto& p : a->parts) factors.push_back(make_arrow(p, b));
    return make_prod(factors);
  }
  if (is(a, K::Prod)) {
    Mono out = b;
    for (auto it = a->parts.rbegin(); it != a->parts.rend(); ++it) out = make_arrow(*it, out);
    return out;
  }
  return mono::arrow(a, b);
}

static Mono simp(const Mono& m) {
  switch (m->kind) {
    case K::Var:
    case K::Zero:
    case K::One:
      return m;
    case K::Sum: {
      std::vector<Mono> ps;
      for (auto& p : m->parts) ps.push_back(simp(p));
      return make_sum(ps);
    }
    case K::Prod: {
      std::vector<Mono> ps;
      for (auto& p : m->parts) ps.push_back(simp(p));
      return make_prod(ps);
    }
    case K::Arrow:
      return make_arrow(simp(m->parts[0]), simp(m->parts[1]));
    case K::Mu:
    case K::Nu: {
      Mono b = simp(m->parts[0]);
      if (!occurs_free(b, m->name)) return b;
      return is(m, K::Mu) ? mono::mu(m->name, b) : mono::nu(m->name, b);
    }
    case K::Exists: {
      Mono b = simp(m->parts[0]);
      auto fv = free_vars(b);
      std::vector<std::string> keep;
      for (auto& v : m->binders)
        if (fv.count(v)) keep.push_back(v);
      if (keep.empty()) return b;
      return mono::exists(keep, b);
    }
  }
  return m;
}

Mono simplify_mono(const Mono& m) {
  // Each pass is already exhaustive bottom-up; iterate in case a rebuilt node exposes a redex.
  Mono cur = simp(m);
  for (int i = 0; i < 64; ++i) {
    Mono next = simp(cur);
    if (alpha_equal(next, cur)) return next;
    cur = next;
  }
  return cur;
}

std::optional<std::uint64_t> numeral_value(const Mono& m) {
  if (is(m, K::Zero)) return 0;
  if (is(m, K::One)) return 1;
  if (!is(m, K::Sum)) return std::nullopt;
  for (auto& p : m->parts)
    if (!is(p, K::One)) return std::nullopt;
  return m->parts.size();
}

Mono numeral(std::uint64_t n) { return mono::sum(std::vector<Mono>(n, mono::one())); }

Mono flat(const Type& a) {
  PolyTree t = tree_of_type(a, Color::Blue);
  auto phi = find_valuation(t);
  if (!phi) throw NotCoherentError("type is not coherent: " + print_type(a));
  return tau(uniform_reduce(t, *phi).result);
}

std::optional<std::uint64_t> count_inhabitants(const Type& a) {
  if (!free_vars(a).empty()) throw OpenTypeError("type has free variables: " + print_type(a));
  // At characteristic 1 the flattened type may still simplify to a numeral.
  if (characteristic_of_type(a) == Kappa::Infinite) return std::nullopt;
  return numeral_value(simplify_mono(flat(a)));
}

// ---------------------------------------------------------------- simple-type predicates

static std::map<std::string, std::pair<int, int>> polarity_counts(const Type& a) {
  if (!is_quantifier_free(a)) throw FragmentError("expected a quantifier-free type: " + print_type(a));
  std::map<std::string, std::pair<int, int>> out;
  for (auto& x : free_vars(a))
    for (auto& o : occurrences(a, x)) (o.color == Color::Blue ? out[x].first : out[x].second)++;
  return out;
}

bool balanced(const Type& a) {
  for (auto& [x, n] : polarity_counts(a))
    if (n.first != 1 || n.second != 1) return false;
  return true;
}

bool negatively_non_duplicated(const Type& a) {
  for (auto& [x, n] : polarity_counts(a))
    if (n.second > 1) return false;
  return true;
}

bool positively_non_duplicated(const Type& a) {
  for (auto& [x, n] : polarity_counts(a))
    if (n.first > 1) return false;
  return true;
}

std::size_t simple_depth(const Type& a) {
  if (!is_quantifier_free(a)) throw FragmentError("expected a quantifier-free type: " + print_type(a));
  if (a->kind == TypeNode::Var) return 0;
  return std::max(simple_depth(a->a) + 1, simple_depth(a->b));
}

// ---------------------------------------------------------------- second-order encoding

namespace {

struct Sharp {
  NameSupply names;

  std::string pick(const std::string& hint) {
    if (!names.taken(hint)) {
      names.reserve(hint);
      return hint;
    }
    return names.fresh(hint);
  }

  Type go(const Mono& m) {
    switch (m->kind) {
      case K::Var: return var(m->name);
      case K::Arrow: return arrow(go(m->parts[0]), go(m->parts[1]));
      case K::One: {
        std::string x = pick("X");
        return forall(x, arrow(var(x), var(x)));
      }
      case K::Zero: {
        std::string x = pick("X");
        return forall(x, var(x));
      }
      case K::Prod: {
        std::vector<Type> ps;
        for (auto& p : m->parts) ps.push_back(go(p));
        std::string x = pick("X");
        return forall(x, arrow(arrows(ps, var(x)), var(x)));
      }
      case K::Sum: {
        std::vector<Type> cases;
        std::vector<Type> ps;
        for (auto& p : m->parts) ps.push_back(go(p));
        std::string x = pick("X");
        for (auto& p : ps) cases.push_back(arrow(p, var(x)));
        return forall(x, arrows(cases, var(x)));
      }
      case K::Mu: {
        Type body = go(m->parts[0]);
        return forall(m->name, arrow(arrow(body, var(m->name)), var(m->name)));
      }
      case K::Nu: {
        Type body = go(m->parts[0]);
        std::string y = pick("Y");
        Type x = var(m->name);
        return forall(y, arrow(forall(m->name, arrow(x, arrow(arrow(x, body), var(y)))), var(y)));
      }
      case K::Exists: {
        Type body = go(m->parts[0]);
        std::string y = pick("Y");
        return forall(y, arrow(forall(m->binders, arrow(body, var(y))), var(y)));
      }
    }
    return var("?");
  }
};

std::set<std::string> mono_names(const Mono& m) {
  std::set<std::string> out;
  if (!m->name.empty()) out.insert(m->name);
  out.insert(m->binders.begin(), m->binders.end());
  for (auto& p : m->parts) {
    auto sub = mono_names(p);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace

Type sharp(const Mono& m) {
  Sharp s{NameSupply(mono_names(m))};
  return s.go(m);
}

}  // namespace lam2
