// One PASS/FAIL line per acceptance criterion, followed by indented details.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.hpp"

using namespace lam2;
using fixtures::mo;
using fixtures::ty;
using gen::TypeGen;

namespace {

struct Report {
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
};

void print(int n, const std::string& title, const Report& r) {
  std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << "\n";
  for (auto& l : r.lines) std::cout << "    " << l << "\n";
}

std::string show(const std::optional<std::uint64_t>& n) { return n ? std::to_string(*n) : "not-finite"; }

TypeGen::Shape shape(std::vector<std::string> free = {}) {
  TypeGen::Shape s;
  s.depth = 3;
  s.max_premises = 3;
  s.binder = 0.4;
  s.inner = 0.2;
  s.free = std::move(free);
  return s;
}

// Runs body over generated instances; body returns false on a failing instance.
struct Suite {
  int instances = 0, failures = 0;
  std::string first;

  void record(bool ok, const std::string& witness) {
    ++instances;
    if (!ok && failures++ == 0) first = witness;
  }
  std::string summary(const std::string& name) const {
    std::ostringstream os;
    os << name << ": " << instances << " instances, " << failures << " failures";
    if (failures) os << " (first: " << first << ")";
    return os.str();
  }
  bool passed(int want) const { return failures == 0 && instances >= want; }
};

std::vector<PolyTree> coherent_trees(std::size_t want, std::uint64_t seed) {
  TypeGen g(seed);
  std::vector<PolyTree> out;
  for (int tries = 0; out.size() < want && tries < 200000; ++tries) {
    PolyTree t = tree_of_type(closure(g.type(shape())), Color::Blue);
    auto bv = bound_variables(t);
    if (!bv.empty() && bv.size() <= 8 && is_coherent(t)) out.push_back(t);
  }
  return out;
}

std::string canon(const Mono& m, std::map<std::string, std::string> env, int depth) {
  switch (m->kind) {
    case MonoNode::Var: {
      auto it = env.find(m->name);
      return it == env.end() ? m->name : it->second;
    }
    case MonoNode::Zero: return "0";
    case MonoNode::One: return "1";
    case MonoNode::Arrow:
      return "(" + canon(m->parts[0], env, depth) + " -> " + canon(m->parts[1], env, depth) + ")";
    case MonoNode::Sum:
    case MonoNode::Prod: {
      std::vector<std::string> ps;
      for (auto& p : m->parts) ps.push_back(canon(p, env, depth));
      std::sort(ps.begin(), ps.end());
      std::string out = "(", sep = m->kind == MonoNode::Sum ? " + " : " * ";
      for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? sep : "") + ps[i];
      return out + ")";
    }
    case MonoNode::Mu:
    case MonoNode::Nu: {
      std::string b = "_" + std::to_string(depth);
      env[m->name] = b;
      return (m->kind == MonoNode::Mu ? "mu " : "nu ") + b + ". " + canon(m->parts[0], env, depth + 1);
    }
    case MonoNode::Exists: {
      std::string out = "exists";
      for (auto& v : m->binders) {
        std::string b = "_" + std::to_string(depth++);
        env[v] = b;
        out += " " + b;
      }
      return out + ". " + canon(m->parts[0], env, depth);
    }
  }
  return "?";
}

std::string canon(const Mono& m) { return canon(m, {}, 0); }

Report criterion1() {
  Report r;
  struct Case {
    const char* name;
    const char* type;
    std::optional<std::uint64_t> want;
  };
  for (const Case& c : {Case{"sixfold", fixtures::kSixfold, 6}, Case{"unique", fixtures::kUnique, 1},
                        Case{"forall X. X", "forall X. X", 0}, Case{"forall X. X -> X", "forall X. X -> X", 1},
                        Case{"forall X. X -> X -> X", "forall X. X -> X -> X", 2}}) {
    auto t0 = std::chrono::steady_clock::now();
    auto n = count_inhabitants(ty(c.type));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "count(" << c.name << ") = " << show(n) << ", expected " << show(c.want) << ", " << secs << " s";
    if (!n) os << " (characteristic " << kappa_name(characteristic_of_type(ty(c.type))) << ")";
    r.check(n == c.want && secs < 5.0, os.str());
  }
  return r;
}

Report criterion2() {
  Report r;
  struct Case {
    const char* name;
    const char* type;
    Kappa want;
  };
  for (const Case& c : {Case{"int", fixtures::kInt, Kappa::One}, Case{"cyclic", fixtures::kCyclic, Kappa::One},
                        Case{"not coherent", fixtures::kNotCoherent, Kappa::Infinite},
                        Case{"unique", fixtures::kUnique, Kappa::Zero}}) {
    Kappa k = characteristic_of_type(ty(c.type));
    r.check(k == c.want, std::string("kappa(") + c.name + ") = " + kappa_name(k) + ", expected " + kappa_name(c.want));
  }
  return r;
}

Report criterion3() {
  Report r;
  r.check(iso_beta_eta(ty(fixtures::kTwinA), ty(fixtures::kTwinB)), "the twin types are isomorphic");
  r.check(tree_equal(fixtures::tree(fixtures::kTwinA), fixtures::tree(fixtures::kTwinB)),
          "the twin types have equal trees");
  TypeGen g(23);
  Suite s;
  int positive = 0;
  for (int i = 0; i < 600; ++i) {
    Type a = g.type(shape({"A", "B"}));
    int renames = 0;
    Type b = i % 3 == 0   ? gen::iso_variant(g, a, renames)
             : i % 3 == 1 ? gen::mutate(g, gen::iso_variant(g, a, renames), {"A", "B", "X", "Y"})
                          : g.type(shape({"A", "B"}));
    bool by_nf = sim(nf(freshen(a)), nf(freshen(b)));
    bool by_tree = tree_equal(tree_of_type(a, Color::Blue), tree_of_type(b, Color::Blue));
    positive += by_nf;
    s.record(by_nf == by_tree && (i % 3 != 0 || by_nf), print_type(a) + " vs " + print_type(b));
  }
  r.check(s.passed(500), s.summary("normal form and tree agreement") + ", " + std::to_string(positive) + " isomorphic");
  return r;
}

Report criterion4() {
  Report r;
  Mono fi = simplify_mono(flat(ty(fixtures::kInt)));
  r.check(canon(fi) == canon(mo("mu X. X + 1")), "flat(int) = " + print_mono(fi));
  Mono fc = flat(ty("forall X. (P -> X) -> Q -> X"));
  r.check(alpha_equal(fc, mo("Q -> P")), "flat(forall X. (P -> X) -> Q -> X) = " + print_mono(fc));
  PolyTree e = fixtures::tree(fixtures::kTwinA);
  Valuation phi = *find_valuation(e);
  Reduction red = standard_reduce(e, phi);
  bool within = BigNat(red.trace.size()) <= measure(e);
  r.check(is_simple(red.result) && within, "twin standard-reduces to a simple tree in " +
                                               std::to_string(red.trace.size()) + " steps, measure " +
                                               measure(e).str());
  return r;
}

Report criterion5() {
  Report r;
  {
    TypeGen g(37);
    Suite s;
    std::vector<Type> corpus{ty("forall A. ((forall V. V -> A) -> A) -> A")};
    while (corpus.size() < 600) corpus.push_back(closure(g.type(shape())));
    for (auto& a : corpus) {
      if (s.instances >= 400) break;
      PolyTree t = tree_of_type(a, Color::Blue);
      for (auto& x : bound_variables(t))
        for (Color c : {Color::Blue, Color::Red}) {
          if (!is_c_eliminable(t, x, c)) continue;
          s.record(measure(reduce_step(t, x, c)) < measure(t), print_type(a) + " eliminating " + x + " " + color_name(c));
        }
    }
    r.check(s.passed(200), s.summary("measure decreases per step"));
  }
  auto corpus = coherent_trees(220, 53);
  {
    Suite solvable, kappa;
    for (auto& t : corpus) {
      Valuation phi = *find_valuation(t);
      Kappa k = characteristic(t);
      for (auto& x : bound_variables(t)) {
        Step st = reduce_step_traced(t, x, phi.at(x));
        Valuation next;
        for (auto& [y, src] : st.ancestry) next[y] = phi.at(src);
        std::string w = print_type(type_of_tree(t)) + " eliminating " + x;
        solvable.record(is_phi_coherent(st.tree, next) && is_coherent(st.tree), w);
        kappa.record(characteristic(st.tree) <= k, w);
      }
    }
    r.check(solvable.passed(200), solvable.summary("standard steps preserve coherence"));
    r.check(kappa.passed(200), kappa.summary("characteristic monotone under standard steps"));
  }
  {
    TypeGen g(71);
    Suite sub, inst;
    for (int i = 0; i < 400; ++i) {
      Type a = g.type(shape({"A"}));
      Kappa ka = characteristic_of_type(a);
      std::vector<Type> subs;
      gen::subterms(a, subs);
      bool ok = true;
      for (auto& b : subs) ok = ok && characteristic_of_type(b) <= ka;
      sub.record(ok, print_type(a));
    }
    for (int i = 0; i < 400; ++i) {
      Type body = g.type(shape({"A"})), b = g.type(shape({"A"}));
      Kappa bound = std::max(characteristic_of_type(forall("A", body)), characteristic_of_type(b));
      inst.record(characteristic_of_type(subst(body, "A", b)) <= bound, print_type(body) + " [" + print_type(b) + "/A]");
    }
    r.check(sub.passed(200), sub.summary("characteristic of subterms bounded"));
    r.check(inst.passed(200), inst.summary("characteristic of instances bounded"));
  }
  {
    Suite s;
    for (auto& t : coherent_trees(200, 61)) {
      Valuation chi = *find_valuation(t);
      PolyTree base = uniform_reduce(t, chi).result;
      bool ok = tree_equal(uniform_reduce(t, chi, 3).result, base) && tree_equal(uniform_reduce(t, chi, 17).result, base);
      s.record(ok, print_type(type_of_tree(t)));
    }
    r.check(s.passed(200), s.summary("uniform reductions with one skeleton agree"));
  }
  {
    TypeGen g(73);
    Suite s;
    for (int i = 0; i < 5000 && s.instances < 220; ++i) {
      Type a = g.type(shape({"A", "P"}));
      if (!occurs_free(a, "A") || characteristic_of_type(forall("A", a)) == Kappa::Infinite) continue;
      TypeGen::Shape sb = shape({"P", "Q"});
      sb.depth = 2;
      Type b = g.type(sb);
      if (characteristic_of_type(b) == Kappa::Infinite) continue;
      Type ab = subst(a, "A", b);
      if (characteristic_of_type(ab) == Kappa::Infinite) continue;
      Mono lhs = flat(ab), rhs = subst(flat(a), "A", flat(b));
      s.record(canon(lhs) == canon(rhs), print_type(a) + " [" + print_type(b) + "/A]: " + print_mono(lhs) + " vs " +
                                             print_mono(rhs));
    }
    r.check(s.passed(200), s.summary("flattening commutes with substitution"));
  }
  {
    TypeGen g(67);
    Suite s;
    for (int i = 0; i < 3000 && s.instances < 300; ++i) {
      PolyTree t = tree_of_type(closure(g.type(shape())), Color::Blue);
      auto bv = bound_variables(t);
      if (bv.empty() || bv.size() > 12) continue;
      bool any = false;
      for (unsigned long m = 0; m < (1ul << bv.size()) && !any; ++m) {
        Valuation phi;
        for (std::size_t k = 0; k < bv.size(); ++k) phi[bv[k]] = (m >> k) & 1 ? Color::Red : Color::Blue;
        any = is_phi_coherent(t, phi);
      }
      bool found = find_valuation(t).has_value();
      s.record(found == any && found == brute_force_coherent(t), print_type(type_of_tree(t)));
    }
    r.check(s.passed(200), s.summary("valuation search agrees with brute force"));
  }
  return r;
}

Report criterion6() {
  Report r;
  {
    TypeGen g(79);
    Suite s;
    for (int i = 0; i < 20000 && s.instances < 80; ++i) {
      Type a = g.simple(3, 3, {"X", "Y", "Z"});
      Type c = closure(a);
      if (characteristic_of_type(c) != Kappa::Zero) continue;
      auto n = count_inhabitants(c);
      OracleCount o = enumerate_inhabitants(a);
      s.record(o.complete && n == std::optional<std::uint64_t>(o.count),
               print_type(c) + ": " + show(n) + " vs oracle " + std::to_string(o.count));
    }
    r.check(s.passed(50), s.summary("counts agree with the oracle on characteristic 0 closures"));
  }
  {
    TypeGen g(83);
    Suite s;
    for (int i = 0; i < 40000 && s.instances < 200; ++i) {
      Type a = g.simple(3, 3, {"X", "Y", "Z"});
      if (!(balanced(a) || negatively_non_duplicated(a)) || !inhabited(a)) continue;
      auto n = count_inhabitants(closure(a));
      s.record(n == std::optional<std::uint64_t>(1),
               print_type(a) + " gives " + show(n) + ", characteristic " + kappa_name(characteristic_of_type(closure(a))));
    }
    r.check(s.passed(50), s.summary("balanced or negatively non-duplicated closures count 1"));
  }
  return r;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  std::vector<std::pair<std::string, std::function<Report()>>> criteria{
      {"worked-example counts", criterion1},
      {"characteristic checks", criterion2},
      {"isomorphism decisions", criterion3},
      {"quantifier elimination", criterion4},
      {"property suites", criterion5},
      {"oracle equivalence", criterion6},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    print(static_cast<int>(i + 1), criteria[i].first, r);
    all = all && r.ok;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "total time " << secs << " s\n";
  return all ? 0 : 1;
}
