#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lam2 {

enum class Color { Blue, Red };

inline Color flip(Color c) { return c == Color::Blue ? Color::Red : Color::Blue; }
const char* color_name(Color c);

// Λ2 types. Values are immutable and shared.
struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
  enum Kind { Var, Arrow, Forall } kind;
  std::string name;  // Var name or Forall binder
  Type a, b;         // Arrow: dom, cod.  Forall: body in a.
};

Type var(std::string name);
Type arrow(Type dom, Type cod);
Type forall(std::string binder, Type body);
Type forall(const std::vector<std::string>& binders, Type body);
Type arrows(const std::vector<Type>& premises, Type result);

// Monomorphic types over 0, 1, +, *, ->, mu, nu, exists.
struct MonoNode;
using Mono = std::shared_ptr<const MonoNode>;

struct MonoNode {
  enum Kind { Var, Arrow, Sum, Prod, Zero, One, Mu, Nu, Exists } kind;
  std::string name;                  // Var name, Mu/Nu binder
  std::vector<std::string> binders;  // Exists
  std::vector<Mono> parts;           // Arrow: {dom, cod}; Sum/Prod; binders: {body}
};

namespace mono {
Mono var(std::string name);
Mono arrow(Mono dom, Mono cod);
Mono sum(std::vector<Mono> parts);   // collapses 0 and 1 parts
Mono prod(std::vector<Mono> parts);  // collapses 0 and 1 parts
Mono zero();
Mono one();
Mono mu(std::string binder, Mono body);
Mono nu(std::string binder, Mono body);
Mono exists(std::vector<std::string> binders, Mono body);
}  // namespace mono

struct ParseError : std::runtime_error {
  ParseError(std::size_t pos, std::set<std::string> expected, const std::string& what);
  std::size_t position;
  std::set<std::string> expected;
};

Type parse_type(const std::string& text);
Mono parse_mono(const std::string& text);

std::string print_type(const Type& t);
std::string print_mono(const Mono& m);

std::set<std::string> free_vars(const Type& t);
std::set<std::string> free_vars(const Mono& m);
bool occurs_free(const Type& t, const std::string& x);
bool occurs_free(const Mono& m, const std::string& x);

bool alpha_equal(const Type& a, const Type& b);
bool alpha_equal(const Mono& a, const Mono& b);

Type subst(const Type& t, const std::string& x, const Type& s);
Mono subst(const Mono& m, const std::string& x, const Mono& s);

struct Occurrence {
  std::string path;  // dot-separated steps: dom, cod, body
  Color color;
};
std::vector<Occurrence> occurrences(const Type& t, const std::string& x);

// Gives every binder a globally unique name, avoiding the free names of t.
// A binder keeps its name when that name is still unused.
Type freshen(const Type& t);

// Strips trailing digits and primes: "X12'" -> "X".
std::string name_stem(const std::string& name);

// Hands out names not contained in `taken`, recording each one it returns.
class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> taken = {}) : taken_(std::move(taken)) {}
  std::string fresh(const std::string& hint);
  void reserve(const std::string& name) { taken_.insert(name); }
  bool taken(const std::string& name) const { return taken_.count(name) > 0; }

 private:
  std::set<std::string> taken_;
  std::map<std::string, unsigned> next_;
};

std::set<std::string> bound_vars(const Type& t);
std::size_t type_size(const Type& t);
bool is_quantifier_free(const Type& t);

// Universal closure over the free variables, in sorted order.
Type closure(const Type& t);

}  // namespace lam2
