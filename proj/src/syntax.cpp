#include "lam2/syntax.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace lam2 {

const char* color_name(Color c) { return c == Color::Blue ? "blue" : "red"; }

Type var(std::string name) {
  return std::make_shared<TypeNode>(TypeNode{TypeNode::Var, std::move(name), nullptr, nullptr});
}
Type arrow(Type dom, Type cod) {
  return std::make_shared<TypeNode>(TypeNode{TypeNode::Arrow, "", std::move(dom), std::move(cod)});
}
Type forall(std::string binder, Type body) {
  return std::make_shared<TypeNode>(TypeNode{TypeNode::Forall, std::move(binder), std::move(body), nullptr});
}
Type forall(const std::vector<std::string>& binders, Type body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = forall(*it, body);
  return body;
}
Type arrows(const std::vector<Type>& premises, Type result) {
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) result = arrow(*it, result);
  return result;
}

namespace mono {
static Mono make(MonoNode n) { return std::make_shared<MonoNode>(std::move(n)); }
Mono var(std::string name) { return make({MonoNode::Var, std::move(name), {}, {}}); }
Mono arrow(Mono dom, Mono cod) { return make({MonoNode::Arrow, "", {}, {std::move(dom), std::move(cod)}}); }
Mono sum(std::vector<Mono> parts) {
  if (parts.empty()) return zero();
  if (parts.size() == 1) return parts[0];
  return make({MonoNode::Sum, "", {}, std::move(parts)});
}
Mono prod(std::vector<Mono> parts) {
  if (parts.empty()) return one();
  if (parts.size() == 1) return parts[0];
  return make({MonoNode::Prod, "", {}, std::move(parts)});
}
Mono zero() { return make({MonoNode::Zero, "", {}, {}}); }
Mono one() { return make({MonoNode::One, "", {}, {}}); }
Mono mu(std::string binder, Mono body) { return make({MonoNode::Mu, std::move(binder), {}, {std::move(body)}}); }
Mono nu(std::string binder, Mono body) { return make({MonoNode::Nu, std::move(binder), {}, {std::move(body)}}); }
Mono exists(std::vector<std::string> binders, Mono body) {
  return make({MonoNode::Exists, "", std::move(binders), {std::move(body)}});
}
}  // namespace mono

static std::string describe(const std::string& what, std::size_t pos, const std::set<std::string>& expected) {
  std::ostringstream os;
  os << what << " at position " << pos;
  if (!expected.empty()) {
    os << "; expected one of:";
    for (auto& e : expected) os << ' ' << e;
  }
  return os.str();
}

ParseError::ParseError(std::size_t pos, std::set<std::string> exp, const std::string& what)
    : std::runtime_error(describe(what, pos, exp)), position(pos), expected(std::move(exp)) {}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Ident, Keyword, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  static const std::set<std::string> keywords = {"forall", "mu", "nu", "exists"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string w = s.substr(i, j - i);
      out.push_back({keywords.count(w) ? Token::Keyword : Token::Ident, w, i});
      i = j;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Token::Sym, "->", i});
      i += 2;
    } else if (std::string("()+*.01").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError(i, {}, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

// Shared syntax tree for both grammars; each entry point rejects what its fragment lacks.
struct Raw {
  enum Kind { Var, Arrow, Sum, Prod, Zero, One, Mu, Nu, Exists, Forall } kind;
  std::size_t pos;
  std::string name;
  std::vector<std::string> binders;
  std::vector<std::shared_ptr<Raw>> parts;
};
using RawP = std::shared_ptr<Raw>;

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(lex(s)) {}

  RawP parse_all() {
    RawP r = type();
    if (peek().kind != Token::End) fail({"->", "+", "*", "end of input"});
    return r;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  bool at(const std::string& sym) const {
    return peek().kind != Token::Ident && peek().kind != Token::End && peek().text == sym;
  }
  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, std::move(expected), "unexpected " + got);
  }
  void expect(const std::string& sym) {
    if (!at(sym)) fail({sym});
    ++i_;
  }

  RawP type() { return arrow(); }

  RawP arrow() {
    RawP l = sum();
    if (at("->")) {
      std::size_t p = peek().pos;
      ++i_;
      RawP r = arrow();
      return std::make_shared<Raw>(Raw{Raw::Arrow, p, "", {}, {l, r}});
    }
    return l;
  }

  RawP sum() {
    RawP first = prod();
    if (!at("+")) return first;
    auto node = std::make_shared<Raw>(Raw{Raw::Sum, peek().pos, "", {}, {first}});
    while (at("+")) {
      ++i_;
      node->parts.push_back(prod());
    }
    return node;
  }

  RawP prod() {
    RawP first = atom();
    if (!at("*")) return first;
    auto node = std::make_shared<Raw>(Raw{Raw::Prod, peek().pos, "", {}, {first}});
    while (at("*")) {
      ++i_;
      node->parts.push_back(atom());
    }
    return node;
  }

  std::vector<std::string> idents(bool many) {
    std::vector<std::string> names;
    if (peek().kind != Token::Ident) fail({"identifier"});
    while (peek().kind == Token::Ident) {
      names.push_back(peek().text);
      ++i_;
      if (!many) break;
    }
    return names;
  }

  RawP atom() {
    const Token& t = peek();
    std::size_t p = t.pos;
    if (t.kind == Token::Ident) {
      ++i_;
      return std::make_shared<Raw>(Raw{Raw::Var, p, t.text, {}, {}});
    }
    if (t.kind == Token::Keyword) {
      std::string kw = t.text;
      ++i_;
      bool many = kw == "forall" || kw == "exists";
      auto names = idents(many);
      expect(".");
      RawP body = type();
      Raw::Kind k = kw == "forall" ? Raw::Forall : kw == "mu" ? Raw::Mu : kw == "nu" ? Raw::Nu : Raw::Exists;
      return std::make_shared<Raw>(Raw{k, p, "", names, {body}});
    }
    if (at("0") || at("1")) {
      Raw::Kind k = t.text == "0" ? Raw::Zero : Raw::One;
      ++i_;
      return std::make_shared<Raw>(Raw{k, p, "", {}, {}});
    }
    if (at("(")) {
      ++i_;
      RawP r = type();
      expect(")");
      return r;
    }
    fail({"identifier", "(", "0", "1", "forall", "mu", "nu", "exists"});
  }
};

const std::set<std::string> lambda2_expected = {"identifier", "(", "forall"};

Type to_type(const RawP& r) {
  switch (r->kind) {
    case Raw::Var:
      return var(r->name);
    case Raw::Arrow:
      return arrow(to_type(r->parts[0]), to_type(r->parts[1]));
    case Raw::Forall:
      return forall(r->binders, to_type(r->parts[0]));
    case Raw::Sum:
      throw ParseError(r->pos, {"->"}, "'+' is not a System F type former");
    case Raw::Prod:
      throw ParseError(r->pos, {"->"}, "'*' is not a System F type former");
    default:
      throw ParseError(r->pos, lambda2_expected, "constructor outside the System F fragment");
  }
}

Mono to_mono(const RawP& r) {
  std::vector<Mono> parts;
  for (auto& p : r->parts) parts.push_back(to_mono(p));
  switch (r->kind) {
    case Raw::Var: return mono::var(r->name);
    case Raw::Arrow: return mono::arrow(parts[0], parts[1]);
    case Raw::Sum: return mono::sum(parts);
    case Raw::Prod: return mono::prod(parts);
    case Raw::Zero: return mono::zero();
    case Raw::One: return mono::one();
    case Raw::Mu: return mono::mu(r->binders[0], parts[0]);
    case Raw::Nu: return mono::nu(r->binders[0], parts[0]);
    case Raw::Exists: return mono::exists(r->binders, parts[0]);
    case Raw::Forall: break;
  }
  throw ParseError(r->pos, {"identifier", "(", "0", "1", "mu", "nu", "exists"},
                   "'forall' is not allowed in a monomorphic type");
}

}  // namespace

Type parse_type(const std::string& text) { return to_type(Parser(text).parse_all()); }
Mono parse_mono(const std::string& text) { return to_mono(Parser(text).parse_all()); }

// ---------------------------------------------------------------- printing
//
// Precedence: 1 arrow, 2 sum, 3 product, 4 atom. Binder forms extend as far
// right as possible, so they need parentheses unless they end their context.

namespace {

void print_t(std::ostringstream& os, const Type& t, int prec, bool last) {
  switch (t->kind) {
    case TypeNode::Var:
      os << t->name;
      return;
    case TypeNode::Forall: {
      if (!last) os << '(';
      os << "forall";
      Type b = t;
      while (b->kind == TypeNode::Forall) {
        os << ' ' << b->name;
        b = b->a;
      }
      os << ". ";
      print_t(os, b, 0, true);
      if (!last) os << ')';
      return;
    }
    case TypeNode::Arrow: {
      bool paren = prec > 1;
      if (paren) os << '(';
      print_t(os, t->a, 2, false);
      os << " -> ";
      print_t(os, t->b, 1, paren || last);
      if (paren) os << ')';
      return;
    }
  }
}

void print_m(std::ostringstream& os, const Mono& m, int prec, bool last) {
  using K = MonoNode;
  switch (m->kind) {
    case K::Var: os << m->name; return;
    case K::Zero: os << '0'; return;
    case K::One: os << '1'; return;
    case K::Mu:
    case K::Nu:
    case K::Exists: {
      if (!last) os << '(';
      if (m->kind == K::Exists) {
        os << "exists";
        for (auto& b : m->binders) os << ' ' << b;
      } else {
        os << (m->kind == K::Mu ? "mu " : "nu ") << m->name;
      }
      os << ". ";
      print_m(os, m->parts[0], 0, true);
      if (!last) os << ')';
      return;
    }
    case K::Arrow: {
      bool paren = prec > 1;
      if (paren) os << '(';
      print_m(os, m->parts[0], 2, false);
      os << " -> ";
      print_m(os, m->parts[1], 1, paren || last);
      if (paren) os << ')';
      return;
    }
    case K::Sum:
    case K::Prod: {
      int level = m->kind == K::Sum ? 2 : 3;
      bool paren = prec > level;
      if (paren) os << '(';
      for (std::size_t i = 0; i < m->parts.size(); ++i) {
        if (i) os << (m->kind == K::Sum ? " + " : " * ");
        bool is_last = i + 1 == m->parts.size();
        print_m(os, m->parts[i], level + 1, is_last && (paren || last));
      }
      if (paren) os << ')';
      return;
    }
  }
}

}  // namespace

std::string print_type(const Type& t) {
  std::ostringstream os;
  print_t(os, t, 0, true);
  return os.str();
}

std::string print_mono(const Mono& m) {
  std::ostringstream os;
  print_m(os, m, 0, true);
  return os.str();
}

// ---------------------------------------------------------------- variables

static void fv(const Type& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TypeNode::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TypeNode::Arrow:
      fv(t->a, bound, out);
      fv(t->b, bound, out);
      return;
    case TypeNode::Forall: {
      bool fresh = bound.insert(t->name).second;
      fv(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

std::set<std::string> free_vars(const Type& t) {
  std::set<std::string> bound, out;
  fv(t, bound, out);
  return out;
}

static void fv(const Mono& m, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (m->kind) {
    case MonoNode::Var:
      if (!bound.count(m->name)) out.insert(m->name);
      return;
    case MonoNode::Mu:
    case MonoNode::Nu: {
      auto it = bound.insert(m->name);
      fv(m->parts[0], bound, out);
      bound.erase(it);
      return;
    }
    case MonoNode::Exists: {
      std::vector<std::multiset<std::string>::iterator> its;
      for (auto& b : m->binders) its.push_back(bound.insert(b));
      fv(m->parts[0], bound, out);
      for (auto it : its) bound.erase(it);
      return;
    }
    default:
      for (auto& p : m->parts) fv(p, bound, out);
  }
}

std::set<std::string> free_vars(const Mono& m) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  fv(m, bound, out);
  return out;
}

bool occurs_free(const Type& t, const std::string& x) { return free_vars(t).count(x) > 0; }
bool occurs_free(const Mono& m, const std::string& x) { return free_vars(m).count(x) > 0; }

std::set<std::string> bound_vars(const Type& t) {
  std::set<std::string> out;
  std::function<void(const Type&)> go = [&](const Type& u) {
    if (u->kind == TypeNode::Forall) out.insert(u->name);
    if (u->a) go(u->a);
    if (u->b) go(u->b);
  };
  go(t);
  return out;
}

std::size_t type_size(const Type& t) {
  if (t->kind == TypeNode::Var) return 1;
  if (t->kind == TypeNode::Forall) return 1 + type_size(t->a);
  return 1 + type_size(t->a) + type_size(t->b);
}

bool is_quantifier_free(const Type& t) {
  if (t->kind == TypeNode::Var) return true;
  if (t->kind == TypeNode::Forall) return false;
  return is_quantifier_free(t->a) && is_quantifier_free(t->b);
}

Type closure(const Type& t) {
  auto fvs = free_vars(t);
  return forall(std::vector<std::string>(fvs.begin(), fvs.end()), t);
}

// ---------------------------------------------------------------- alpha equivalence

namespace {

// Binder environments map each bound name to the depth at which it was bound.
using Env = std::vector<std::pair<std::string, std::string>>;

int lookup(const Env& env, const std::string& x, bool left) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
    if ((left ? env[i].first : env[i].second) == x) return i;
  return -1;
}

bool var_eq(const Env& env, const std::string& x, const std::string& y) {
  int i = lookup(env, x, true), j = lookup(env, y, false);
  if (i < 0 && j < 0) return x == y;
  return i == j;
}

bool aeq(const Type& a, const Type& b, Env& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeNode::Var:
      return var_eq(env, a->name, b->name);
    case TypeNode::Arrow:
      return aeq(a->a, b->a, env) && aeq(a->b, b->b, env);
    case TypeNode::Forall: {
      env.emplace_back(a->name, b->name);
      bool r = aeq(a->a, b->a, env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

bool aeq(const Mono& a, const Mono& b, Env& env) {
  if (a->kind != b->kind || a->parts.size() != b->parts.size()) return false;
  std::size_t pushed = 0;
  switch (a->kind) {
    case MonoNode::Var:
      return var_eq(env, a->name, b->name);
    case MonoNode::Mu:
    case MonoNode::Nu:
      env.emplace_back(a->name, b->name);
      pushed = 1;
      break;
    case MonoNode::Exists:
      if (a->binders.size() != b->binders.size()) return false;
      for (std::size_t i = 0; i < a->binders.size(); ++i) env.emplace_back(a->binders[i], b->binders[i]);
      pushed = a->binders.size();
      break;
    default:
      break;
  }
  bool r = true;
  for (std::size_t i = 0; r && i < a->parts.size(); ++i) r = aeq(a->parts[i], b->parts[i], env);
  env.resize(env.size() - pushed);
  return r;
}

}  // namespace

bool alpha_equal(const Type& a, const Type& b) {
  Env env;
  return aeq(a, b, env);
}

bool alpha_equal(const Mono& a, const Mono& b) {
  Env env;
  return aeq(a, b, env);
}

// ---------------------------------------------------------------- names

std::string name_stem(const std::string& name) {
  std::size_t n = name.size();
  while (n > 1 && (std::isdigit(static_cast<unsigned char>(name[n - 1])) || name[n - 1] == '\'')) --n;
  return name.substr(0, n);
}

std::string NameSupply::fresh(const std::string& hint) {
  std::string stem = name_stem(hint);
  unsigned& k = next_[stem];
  for (;;) {
    std::string cand = stem + std::to_string(++k);
    if (taken_.insert(cand).second) return cand;
  }
}

// ---------------------------------------------------------------- substitution

static std::string prime_away(std::string name, const std::set<std::string>& avoid) {
  while (avoid.count(name)) name += '\'';
  return name;
}

Type subst(const Type& t, const std::string& x, const Type& s) {
  switch (t->kind) {
    case TypeNode::Var:
      return t->name == x ? s : t;
    case TypeNode::Arrow:
      return arrow(subst(t->a, x, s), subst(t->b, x, s));
    case TypeNode::Forall: {
      if (t->name == x) return t;
      auto body_fv = free_vars(t->a);
      if (!body_fv.count(x)) return t;
      auto s_fv = free_vars(s);
      if (!s_fv.count(t->name)) return forall(t->name, subst(t->a, x, s));
      std::set<std::string> avoid = s_fv;
      avoid.insert(body_fv.begin(), body_fv.end());
      std::string y = prime_away(t->name, avoid);
      return forall(y, subst(subst(t->a, t->name, var(y)), x, s));
    }
  }
  return t;
}

Mono subst(const Mono& m, const std::string& x, const Mono& s) {
  switch (m->kind) {
    case MonoNode::Var:
      return m->name == x ? s : m;
    case MonoNode::Zero:
    case MonoNode::One:
      return m;
    case MonoNode::Mu:
    case MonoNode::Nu:
    case MonoNode::Exists: {
      std::vector<std::string> names = m->kind == MonoNode::Exists ? m->binders : std::vector<std::string>{m->name};
      for (auto& n : names)
        if (n == x) return m;
      Mono body = m->parts[0];
      auto body_fv = free_vars(body);
      if (!body_fv.count(x)) return m;
      auto s_fv = free_vars(s);
      std::set<std::string> avoid = s_fv;
      avoid.insert(body_fv.begin(), body_fv.end());
      for (auto& n : names) {
        if (!s_fv.count(n)) continue;
        std::string y = prime_away(n, avoid);
        avoid.insert(y);
        body = subst(body, n, mono::var(y));
        n = y;
      }
      body = subst(body, x, s);
      if (m->kind == MonoNode::Mu) return mono::mu(names[0], body);
      if (m->kind == MonoNode::Nu) return mono::nu(names[0], body);
      return mono::exists(names, body);
    }
    default: {
      std::vector<Mono> parts;
      for (auto& p : m->parts) parts.push_back(subst(p, x, s));
      auto out = std::make_shared<MonoNode>(*m);
      out->parts = std::move(parts);
      return out;
    }
  }
}

// ---------------------------------------------------------------- occurrences

std::vector<Occurrence> occurrences(const Type& t, const std::string& x) {
  std::vector<Occurrence> out;
  std::function<void(const Type&, const std::string&, Color)> go = [&](const Type& u, const std::string& path,
                                                                      Color c) {
    auto step = [&](const char* s) { return path.empty() ? std::string(s) : path + "." + s; };
    switch (u->kind) {
      case TypeNode::Var:
        if (u->name == x) out.push_back({path, c});
        return;
      case TypeNode::Arrow:
        go(u->a, step("dom"), flip(c));
        go(u->b, step("cod"), c);
        return;
      case TypeNode::Forall:
        if (u->name != x) go(u->a, step("body"), c);
        return;
    }
  };
  go(t, "", Color::Blue);
  return out;
}

// ---------------------------------------------------------------- freshening

Type freshen(const Type& t) {
  NameSupply names(free_vars(t));
  std::function<Type(const Type&, const std::map<std::string, std::string>&)> go =
      [&](const Type& u, const std::map<std::string, std::string>& ren) -> Type {
    switch (u->kind) {
      case TypeNode::Var: {
        auto it = ren.find(u->name);
        return it == ren.end() ? u : var(it->second);
      }
      case TypeNode::Arrow:
        return arrow(go(u->a, ren), go(u->b, ren));
      case TypeNode::Forall: {
        auto inner = ren;
        std::string y = u->name;
        if (names.taken(y)) y = names.fresh(y);
        else names.reserve(y);
        inner[u->name] = y;
        return forall(y, go(u->a, inner));
      }
    }
    return u;
  };
  return go(t, {});
}

}  // namespace lam2
