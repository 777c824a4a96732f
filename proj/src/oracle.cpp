#include "lam2/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace lam2 {

namespace {

// A simple type as premises => atom, with premises in the same shape.
struct Shape {
  std::vector<int> premises;  // indices into the shape table
  std::string atom;
};

class Search {
 public:
  explicit Search(std::size_t bound) : bound_(bound) {}

  int intern(const Type& t) {
    std::string key = print_type(t);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    Shape s;
    Type u = t;
    while (u->kind == TypeNode::Arrow) {
      s.premises.push_back(intern(u->a));
      u = u->b;
    }
    if (u->kind != TypeNode::Var) throw std::invalid_argument("oracle: quantifier in " + print_type(t));
    s.atom = u->name;
    shapes_.push_back(s);
    ids_[key] = static_cast<int>(shapes_.size() - 1);
    return ids_[key];
  }

  // Provability of `goal` from the hypothesis set; context only grows, so memoise on it.
  bool provable(const std::set<int>& ctx, int goal) {
    std::set<int> c = ctx;
    for (int p : shapes_[goal].premises) c.insert(p);
    return atom_provable(c, shapes_[goal].atom);
  }

  OracleCount count(int goal) {
    incomplete_ = infinite_ = false;
    std::multiset<int> ctx;
    std::vector<std::pair<std::string, std::set<int>>> path;
    std::uint64_t n = count_goal(ctx, goal, path, 0);
    return {n, !incomplete_ && !infinite_, infinite_};
  }

 private:
  std::size_t bound_;
  std::vector<Shape> shapes_;
  std::map<std::string, int> ids_;
  std::map<std::pair<std::set<int>, std::string>, bool> memo_;
  std::set<std::pair<std::set<int>, std::string>> active_;
  bool incomplete_ = false, infinite_ = false, cut_ = false;

  bool atom_provable(const std::set<int>& ctx, const std::string& atom) {
    auto key = std::make_pair(ctx, atom);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (active_.count(key)) {
      cut_ = true;
      return false;
    }
    bool outer_cut = cut_;
    cut_ = false;
    active_.insert(key);
    bool ok = false;
    for (int h : ctx) {
      if (shapes_[h].atom != atom) continue;
      bool all = true;
      for (int p : shapes_[h].premises)
        if (!provable(ctx, p)) {
          all = false;
          break;
        }
      if (all) {
        ok = true;
        break;
      }
    }
    active_.erase(key);
    // A negative answer that relied on cutting a loop is only valid on this path.
    if (ok || !cut_) memo_[key] = ok;
    cut_ = cut_ || outer_cut;
    return ok;
  }

  static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > UINT64_MAX - b ? UINT64_MAX : a + b;
  }
  static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > UINT64_MAX / b ? UINT64_MAX : a * b;
  }

  std::uint64_t count_goal(std::multiset<int> ctx, int goal, std::vector<std::pair<std::string, std::set<int>>>& path,
                           std::size_t depth) {
    for (int p : shapes_[goal].premises) ctx.insert(p);
    const std::string& atom = shapes_[goal].atom;
    std::set<int> set(ctx.begin(), ctx.end());
    if (!atom_provable(set, atom)) return 0;
    for (auto& s : path)
      if (s.first == atom && s.second == set) {
        // The same inhabited sequent again: the loop can be pumped.
        infinite_ = true;
        return 0;
      }
    if (depth >= bound_) {
      incomplete_ = true;
      return 0;
    }
    path.emplace_back(atom, set);
    std::uint64_t total = 0;
    // Each hypothesis occurrence is a distinct variable.
    for (int h : ctx) {
      if (shapes_[h].atom != atom) continue;
      bool all = true;
      for (int p : shapes_[h].premises)
        if (!provable(set, p)) {
          all = false;
          break;
        }
      if (!all) continue;
      std::uint64_t ways = 1;
      for (int p : shapes_[h].premises) ways = sat_mul(ways, count_goal(ctx, p, path, depth + 1));
      total = sat_add(total, ways);
    }
    path.pop_back();
    return total;
  }
};

}  // namespace

OracleCount enumerate_inhabitants(const Type& a, std::size_t depth_bound) {
  if (!is_quantifier_free(a)) throw std::invalid_argument("oracle: expected a quantifier-free type");
  Search s(depth_bound);
  int g = s.intern(a);
  return s.count(g);
}

bool inhabited(const Type& a) {
  if (!is_quantifier_free(a)) throw std::invalid_argument("oracle: expected a quantifier-free type");
  Search s(0);
  int g = s.intern(a);
  return s.provable({}, g);
}

}  // namespace lam2
