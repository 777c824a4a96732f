#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lam2/finite.hpp"
#include "lam2/normform.hpp"
#include "lam2/oracle.hpp"

using namespace lam2;
using json = nlohmann::json;

namespace {

enum Exit { Ok = 0, Usage = 1, Negative = 2, Precondition = 3 };

struct Failure {
  int code;
  std::string message;
};

std::string read_input(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw Failure{Usage, "cannot read " + arg.substr(1)};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Type read_type(const std::string& arg) {
  try {
    return parse_type(read_input(arg));
  } catch (const ParseError& e) {
    throw Failure{Usage, e.what()};
  }
}

std::string render(const PolyTree& e, NodeId n, int indent) {
  std::string pad(indent * 2, ' ');
  const Node& x = e[n];
  std::ostringstream os;
  if (x.terminal) {
    os << pad << label_text(x.label) << " (" << color_name(x.color) << ")\n";
    return os.str();
  }
  os << pad;
  if (x.binder == BinderKind::MuAnchor) os << "mu-anchor " << x.anchor;
  else if (x.binder == BinderKind::NuAnchor) os << "nu-anchor " << x.anchor;
  else {
    os << "node {";
    for (std::size_t i = 0; i < x.vars.size(); ++i) os << (i ? " " : "") << x.vars[i];
    os << "}";
  }
  os << " (" << color_name(x.color) << ")\n";
  for (NodeId c : x.children) os << render(e, c, indent + 1);
  os << pad << "  head:\n" << render(e, x.head, indent + 2);
  return os.str();
}

json valuation_json(const Valuation& v) {
  json j = json::object();
  for (auto& [k, c] : v) j[k] = color_name(c);
  return j;
}

Policy policy_of(const std::string& s) {
  if (s == "innermost") return Policy::Innermost;
  if (s == "random") return Policy::Random;
  if (s == "least-canceling") return Policy::LeastCanceling;
  return Policy::Outermost;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyses of System F types: isomorphism, quantifier elimination, characteristic, counting"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit JSON");

  std::string t1, t2, predicate, strategy = "outermost";
  bool dot = false, annotate = false, trace = false, use_oracle = false;
  std::uint64_t seed = 0;

  auto* c_parse = app.add_subcommand("parse", "Parse and print a type");
  c_parse->add_option("type", t1)->required();
  auto* c_nf = app.add_subcommand("nf", "Normal form");
  c_nf->add_option("type", t1)->required();
  auto* c_iso = app.add_subcommand("iso", "Decide beta-eta isomorphism");
  c_iso->add_option("a", t1)->required();
  c_iso->add_option("b", t2)->required();
  auto* c_tree = app.add_subcommand("tree", "Show the tree of a type");
  c_tree->add_option("type", t1)->required();
  c_tree->add_flag("--dot", dot, "Graphviz output");
  c_tree->add_flag("--annotate", annotate, "Mark modular nodes and pairs");
  auto* c_coh = app.add_subcommand("coherent", "Coherence and canonical valuation");
  c_coh->add_option("type", t1)->required();
  auto* c_char = app.add_subcommand("char", "Characteristic: 0, 1 or inf");
  c_char->add_option("type", t1)->required();
  auto* c_red = app.add_subcommand("reduce", "Eliminate quantifiers");
  c_red->add_option("type", t1)->required();
  c_red->add_flag("--trace", trace, "Print the steps");
  c_red->add_option("--strategy", strategy, "outermost|innermost|random|least-canceling|uniform")
      ->check(CLI::IsMember({"outermost", "innermost", "random", "least-canceling", "uniform"}));
  c_red->add_option("--seed", seed, "Seed for random choices");
  auto* c_flat = app.add_subcommand("flat", "Monomorphic translation");
  c_flat->add_option("type", t1)->required();
  auto* c_count = app.add_subcommand("count", "Count inhabitants of a closed type");
  c_count->add_option("type", t1)->required();
  c_count->add_flag("--oracle", use_oracle, "Also run the brute-force counter");
  auto* c_check = app.add_subcommand("check", "Predicates on simple types");
  c_check->add_option("type", t1)->required();
  c_check->add_option("--predicate", predicate, "balanced|nnd|pnd")
      ->required()
      ->check(CLI::IsMember({"balanced", "nnd", "pnd"}));
  auto* c_sharp = app.add_subcommand("sharp", "Second-order encoding of a monomorphic type");
  c_sharp->add_option("type", t1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : Usage;
  }

  auto* sub = app.get_subcommands().front();
  json out = {{"schema", 1}, {"command", sub->get_name()}, {"input", t1}};
  if (sub == c_iso) out["input"] = json::array({t1, t2});
  std::string text;
  int code = Ok;

  try {
    if (sub == c_parse) {
      std::string src = read_input(t1);
      try {
        text = print_type(parse_type(src));
        out["fragment"] = "system-f";
      } catch (const ParseError&) {
        try {
          text = print_mono(parse_mono(src));
          out["fragment"] = "monomorphic";
        } catch (const ParseError& e) {
          throw Failure{Usage, e.what()};
        }
      }
      out["result"] = text;
    } else if (sub == c_nf) {
      text = print_type(nf(freshen(read_type(t1))));
      out["result"] = text;
    } else if (sub == c_iso) {
      bool r = iso_beta_eta(read_type(t1), read_type(t2));
      text = r ? "iso" : "not-iso";
      out["result"] = text;
      if (!r) code = Negative;
    } else if (sub == c_tree) {
      PolyTree t = tree_of_type(read_type(t1), Color::Blue);
      text = dot ? to_dot(t, {annotate, annotate}) : render(t, t.root, 0);
      if (!text.empty() && text.back() == '\n') text.pop_back();
      out["result"] = text;
    } else if (sub == c_coh) {
      PolyTree t = tree_of_type(read_type(t1), Color::Blue);
      auto r = find_valuation_detailed(t);
      if (r.valuation) {
        text = "coherent";
        out["witness"] = valuation_json(*r.valuation);
        for (auto& [k, c] : *r.valuation) text += std::string("\n") + k + " " + color_name(c);
      } else {
        text = "incoherent";
        json w = json::array();
        for (auto& l : r.conflict) w.push_back({{"var", l.var}, {"color", color_name(l.color)}});
        out["witness"] = w;
        code = Negative;
      }
      out["result"] = r.valuation ? "coherent" : "incoherent";
    } else if (sub == c_char) {
      PolyTree t = tree_of_type(read_type(t1), Color::Blue);
      auto r = find_valuation_detailed(t);
      Kappa k = characteristic(t);
      text = kappa_name(k);
      out["result"] = text;
      if (k == Kappa::Infinite) {
        json w = json::array();
        for (auto& l : r.conflict) w.push_back({{"var", l.var}, {"color", color_name(l.color)}});
        out["witness"] = {{"conflict", w}};
      } else if (k == Kappa::One) {
        out["witness"] = {{"valuation", valuation_json(*r.valuation)}, {"cycle", *find_cyclic_alternating_path(t)}};
      } else {
        out["witness"] = {{"valuation", valuation_json(*r.valuation)}};
      }
    } else if (sub == c_red) {
      PolyTree t = tree_of_type(read_type(t1), Color::Blue);
      auto phi = find_valuation(t);
      if (!phi) throw Failure{Negative, "incoherent: no standard reduction reaches a simple tree"};
      Reduction r = strategy == "uniform" ? uniform_reduce(t, *phi, seed)
                                          : standard_reduce(t, *phi, policy_of(strategy), seed);
      text = print_mono(tau(r.result));
      out["result"] = text;
      json steps = json::array();
      std::ostringstream tr;
      for (auto& s : r.trace) {
        steps.push_back({{"var", s.var},
                         {"color", color_name(s.color)},
                         {"measure_before", s.measure_before.str()},
                         {"measure_after", s.measure_after.str()}});
        tr << s.var << " " << color_name(s.color) << " " << s.measure_before << " -> " << s.measure_after << "\n";
      }
      if (trace) {
        out["trace"] = steps;
        text = tr.str() + text;
      }
    } else if (sub == c_flat) {
      try {
        text = print_mono(flat(read_type(t1)));
      } catch (const NotCoherentError& e) {
        throw Failure{Negative, e.what()};
      }
      out["result"] = text;
    } else if (sub == c_count) {
      Type a = read_type(t1);
      std::optional<std::uint64_t> n;
      try {
        n = count_inhabitants(a);
      } catch (const OpenTypeError& e) {
        throw Failure{Precondition, e.what()};
      }
      text = n ? std::to_string(*n) : "not-finite";
      out["result"] = n ? json(*n) : json("not-finite");
      if (!n) code = Negative;
      if (use_oracle) {
        Type body = a;
        while (body->kind == TypeNode::Forall) body = body->a;
        if (!is_quantifier_free(body))
          throw Failure{Precondition, "--oracle needs a closure of a quantifier-free type"};
        OracleCount oc = enumerate_inhabitants(body);
        json o = {{"count", oc.count}, {"complete", oc.complete}, {"infinite", oc.infinite}};
        out["oracle"] = o;
        text += "\noracle " + (oc.infinite ? std::string("infinite") : std::to_string(oc.count)) +
                (oc.complete ? " complete" : " incomplete");
      }
    } else if (sub == c_check) {
      Type a = read_type(t1);
      bool r;
      try {
        r = predicate == "balanced" ? balanced(a)
            : predicate == "nnd"    ? negatively_non_duplicated(a)
                                    : positively_non_duplicated(a);
        out["depth"] = simple_depth(a);
      } catch (const FragmentError& e) {
        throw Failure{Precondition, e.what()};
      }
      text = r ? "true" : "false";
      out["result"] = r;
    } else if (sub == c_sharp) {
      Mono m;
      try {
        m = parse_mono(read_input(t1));
      } catch (const ParseError& e) {
        throw Failure{Usage, e.what()};
      }
      text = print_type(sharp(m));
      out["result"] = text;
    }
  } catch (const Failure& f) {
    code = f.code;
    out["error"] = f.message;
    if (!out.contains("result")) out["result"] = nullptr;
    text = "error: " + f.message;
  }

  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else if (code != Ok && out.contains("error")) {
    std::cerr << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  return code;
}
