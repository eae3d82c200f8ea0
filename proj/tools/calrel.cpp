// Command-line front end.
// Exit status: 0 indistinguishable or success, 1 distinguishable, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "calrel/bisim.hpp"
#include "calrel/charexpr.hpp"
#include "calrel/error.hpp"
#include "calrel/eval.hpp"
#include "calrel/oracle.hpp"
#include "calrel/parser.hpp"
#include "calrel/paths.hpp"
#include "calrel/sim.hpp"
#include "calrel/structure.hpp"

using namespace calrel;
using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kRenderLimit = 1 << 20;

struct Common {
  std::string fragment;
  std::optional<std::size_t> degree;
  bool unbounded = false;
  bool json = false;
};

struct MarkArgs {
  std::string path;
  std::string a, b;
};

struct Loaded {
  Structure g;
  std::size_t a = 0, b = 0;
  MarkedStructure marked() const { return {&g, a, b}; }
};

Loaded load_mark(const MarkArgs& m) {
  Loaded l{load_structure(m.path)};
  l.a = l.g.require_index(m.a);
  l.b = l.g.require_index(m.b);
  return l;
}

// Positional "<file> <a> <b> <file> <a> <b>".
std::pair<MarkArgs, MarkArgs> split_marks(const std::vector<std::string>& v) {
  if (v.size() != 6) throw Error("expected <structure> <a> <b> <structure> <a> <b>");
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

DegreeBound bound_of(const Common& c) {
  if (c.unbounded) return std::nullopt;
  if (!c.degree) throw Error("one of --degree or --unbounded is required");
  return *c.degree;
}

Direction direction_of(const std::string& s) {
  if (s == "one-sided") return Direction::OneSided;
  if (s == "two-sided") return Direction::TwoSided;
  throw Error("direction must be one-sided or two-sided");
}

std::string expr_text(const Expr& e, bool force) {
  const std::size_t len = rendered_size(e);
  if (len > kRenderLimit && !force) {
    return "<" + std::to_string(len) + " characters, " + std::to_string(dag_node_count(e)) +
           " shared nodes; pass --full to print>";
  }
  return render(e);
}

json pairs_json(const PairSet& s, const Structure& g) {
  json out = json::array();
  for (auto [x, y] : s.pairs()) out.push_back({g.nodes()[x], g.nodes()[y]});
  return out;
}

void print_pairs(const PairSet& s, const Structure& g) {
  for (auto [x, y] : s.pairs()) std::cout << g.nodes()[x] << ' ' << g.nodes()[y] << '\n';
}

json tuples_json(const PairRelation& z, const Structure& g1, const Structure& g2) {
  json out = json::array();
  for (std::size_t a1 = 0; a1 < g1.size(); ++a1) {
    for (std::size_t b1 = 0; b1 < g1.size(); ++b1) {
      for (auto [a2, b2] : z.slice(a1, b1).pairs()) {
        out.push_back({g1.nodes()[a1], g1.nodes()[b1], g2.nodes()[a2], g2.nodes()[b2]});
      }
    }
  }
  return out;
}

void print_tuples(const std::string& prefix, const PairRelation& z, const Structure& g1, const Structure& g2) {
  for (std::size_t a1 = 0; a1 < g1.size(); ++a1) {
    for (std::size_t b1 = 0; b1 < g1.size(); ++b1) {
      for (auto [a2, b2] : z.slice(a1, b1).pairs()) {
        std::cout << prefix << g1.nodes()[a1] << ' ' << g1.nodes()[b1] << ' ' << g2.nodes()[a2] << ' '
                  << g2.nodes()[b2] << '\n';
      }
    }
  }
}

void add_degree_flags(CLI::App* cmd, Common& c) {
  auto* d = cmd->add_option("--degree,-k", c.degree, "Degree bound");
  auto* u = cmd->add_flag("--unbounded", c.unbounded, "No degree bound");
  d->excludes(u);
  u->excludes(d);
}

void add_common(CLI::App* cmd, Common& c, bool degree = true) {
  cmd->add_option("--fragment,-f", c.fragment, "Comma list over di,one,conv,compl,pi,cpi,diff,lres,rres (default: none)");
  cmd->add_flag("--json", c.json, "Machine-readable output");
  if (degree) add_degree_flags(cmd, c);
}

int run_eval(const std::string& text, const std::string& path, const Common& c) {
  Structure g = load_structure(path);
  Expr e = parse_expr(text);
  PairSet s = evaluate(e, g);
  if (c.json) {
    std::cout << json{{"expression", render(e)}, {"degree", degree(e)}, {"pairs", pairs_json(s, g)}}.dump(2) << '\n';
  } else {
    print_pairs(s, g);
  }
  return 0;
}

int run_decide(const Common& c, const std::vector<std::string>& pos, const std::string& dir_text,
               std::size_t subset_bits, bool witness, bool full) {
  const Fragment f = Fragment::parse(c.fragment);
  const DegreeBound k = bound_of(c);
  const Direction dir = direction_of(dir_text);
  auto [ma, mb] = split_marks(pos);
  Loaded l1 = load_mark(ma), l2 = load_mark(mb);
  const bool same = indistinguishable(f, k, l1.marked(), l2.marked(), dir);
  json report{{"fragment", f.to_string()},
              {"degree", k ? json(*k) : json("unbounded")},
              {"direction", dir_text},
              {"verdict", same ? "INDISTINGUISHABLE" : "DISTINGUISHABLE"}};
  std::optional<Witness> w;
  std::string note;
  if (!same && witness) {
    CharOptions opts;
    opts.max_subset_bits = subset_bits;
    try {
      w = distinguishing_witness(f, k, l1.marked(), l2.marked(), dir, opts);
    } catch (const SizeLimit& e) {
      note = e.what();
    }
  }
  std::string source = "charexpr";
  if (!same && witness && !w) {
    // Too large for the characteristic construction: search small expressions instead.
    EnumBudget b;
    b.fragment = f;
    b.max_degree = k.value_or(4);
    b.max_ast_size = f.has(Feature::LRes) || f.has(Feature::RRes) ? 7 : 9;
    BruteVerdict v = decide_bruteforce(b, l1.marked(), l2.marked(), dir);
    if (v.witness) {
      w = Witness{*v.witness, v.witness_on_first};
      source = "oracle";
      const auto& on = v.witness_on_first ? l1 : l2;
      const auto& off = v.witness_on_first ? l2 : l1;
      if (!holds(w->expr, on.marked()) || holds(w->expr, off.marked())) {
        throw std::logic_error("oracle witness failed to verify");
      }
    } else if (!note.empty()) {
      note += "; no oracle witness up to size " + std::to_string(b.max_ast_size);
    }
  }
  if (w) {
    report["witness"] = expr_text(w->expr, full);
    report["witness_source"] = source;
    report["witness_degree"] = degree(w->expr);
    report["witness_holds_on"] = w->holds_on_first ? "first" : "second";
  } else if (!note.empty()) {
    report["witness_unavailable"] = note;
  }
  if (c.json) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << report["verdict"].get<std::string>() << '\n';
    if (w) {
      std::cout << "witness: " << report["witness"].get<std::string>() << '\n';
      std::cout << "witness degree: " << degree(w->expr) << '\n';
      std::cout << "witness holds on: " << (w->holds_on_first ? "first" : "second") << '\n';
      std::cout << "witness source: " << source << '\n';
    } else if (!note.empty()) {
      std::cout << "witness unavailable: " << note << '\n';
    }
  }
  return same ? 0 : 1;
}

int run_maxbisim(const Common& c, const std::string& p1, const std::string& p2) {
  const Fragment f = Fragment::parse(c.fragment);
  Structure g1 = load_structure(p1), g2 = load_structure(p2);
  json report{{"fragment", f.to_string()}};
  if (c.unbounded) {
    auto u = max_bisimulation_unbounded(f, g1, g2);
    report["rounds"] = u.rounds;
    report["levels"] = json::array({json{{"degree", "unbounded"}, {"tuples", tuples_json(u.z, g1, g2)}}});
    if (!c.json) {
      std::cout << "# rounds " << u.rounds << '\n';
      print_tuples("inf ", u.z, g1, g2);
    }
  } else {
    const DegreeBound k = bound_of(c);
    auto zs = max_bisimulation(f, g1, g2, *k);
    report["levels"] = json::array();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      report["levels"].push_back({{"degree", i}, {"tuples", tuples_json(zs[i], g1, g2)}});
      if (!c.json) print_tuples(std::to_string(i) + " ", zs[i], g1, g2);
    }
  }
  if (c.json) std::cout << report.dump(2) << '\n';
  return 0;
}

int run_maxsim(const Common& c, const std::string& p1, const std::string& p2) {
  const Fragment f = Fragment::parse(c.fragment);
  Structure g1 = load_structure(p1), g2 = load_structure(p2);
  json report{{"fragment", f.to_string()}};
  if (c.unbounded) {
    auto u = max_simulation_unbounded(f, g1, g2);
    report["rounds"] = u.rounds;
    report["levels"] = json::array(
        {json{{"degree", "unbounded"}, {"z", tuples_json(u.z, g1, g2)}, {"w", tuples_json(u.w, g1, g2)}}});
    if (!c.json) {
      std::cout << "# rounds " << u.rounds << '\n';
      print_tuples("Z inf ", u.z, g1, g2);
      print_tuples("W inf ", u.w, g1, g2);
    }
  } else {
    const DegreeBound k = bound_of(c);
    auto s = max_simulation(f, g1, g2, *k);
    report["levels"] = json::array();
    for (std::size_t i = 0; i < s.z.size(); ++i) {
      report["levels"].push_back(
          {{"degree", i}, {"z", tuples_json(s.z[i], g1, g2)}, {"w", tuples_json(s.w[i], g1, g2)}});
      if (!c.json) {
        print_tuples("Z " + std::to_string(i) + " ", s.z[i], g1, g2);
        print_tuples("W " + std::to_string(i) + " ", s.w[i], g1, g2);
      }
    }
  }
  if (c.json) std::cout << report.dump(2) << '\n';
  return 0;
}

int run_charexpr(const Common& c, const std::vector<std::string>& pos, std::size_t subset_bits, bool full) {
  if (pos.size() != 3) throw Error("expected <structure> <a> <b>");
  if (!c.degree) throw Error("--degree is required");
  const Fragment f = Fragment::parse(c.fragment);
  Loaded l = load_mark({pos[0], pos[1], pos[2]});
  CharOptions opts;
  opts.max_subset_bits = subset_bits;
  json report{{"fragment", f.to_string()}, {"degree", *c.degree}};
  auto describe = [&](const std::string& key, const Expr& e) {
    report[key] = expr_text(e, full);
    report[key + "_rendered_size"] = rendered_size(e);
    report[key + "_dag_nodes"] = dag_node_count(e);
    if (!c.json) {
      std::cout << key << ": " << report[key].get<std::string>() << '\n';
      std::cout << "# rendered size " << rendered_size(e) << ", shared nodes " << dag_node_count(e) << '\n';
    }
  };
  if (f.has_negation()) {
    describe("expression", char_expr_bisim(f, *c.degree, l.marked(), opts));
  } else {
    SimChar s = char_expr_sim(f, *c.degree, l.marked(), opts);
    describe("expression", s.e);
    describe("back_expression", s.e_prime);
  }
  if (c.json) std::cout << report.dump(2) << '\n';
  return 0;
}

int run_distinguish(const Common& c, const std::vector<std::string>& pos, const std::string& dir_text,
                    std::optional<std::size_t> max_size, std::size_t max_degree) {
  const Fragment f = Fragment::parse(c.fragment);
  const Direction dir = direction_of(dir_text);
  auto [ma, mb] = split_marks(pos);
  Loaded l1 = load_mark(ma), l2 = load_mark(mb);
  EnumBudget b;
  b.fragment = f;
  b.max_degree = max_degree;
  b.max_ast_size = max_size.value_or(f.has(Feature::LRes) || f.has(Feature::RRes) ? 7 : 9);
  BruteVerdict v = decide_bruteforce(b, l1.marked(), l2.marked(), dir);
  json report{{"fragment", f.to_string()},
              {"max_size", b.max_ast_size},
              {"max_degree", b.max_degree},
              {"direction", dir_text},
              {"verdict", v.indistinguishable ? "no witness within budget" : "DISTINGUISHABLE"}};
  if (v.witness) {
    report["witness"] = render(*v.witness);
    report["witness_holds_on"] = v.witness_on_first ? "first" : "second";
  }
  if (c.json) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << report["verdict"].get<std::string>() << '\n';
    if (v.witness) {
      std::cout << "witness: " << render(*v.witness) << '\n';
      std::cout << "witness holds on: " << (v.witness_on_first ? "first" : "second") << '\n';
    }
  }
  return v.indistinguishable ? 0 : 1;
}

int run_paths(const Common& c, const std::string& path) {
  const Fragment f = Fragment::parse(c.fragment);
  Structure g = load_structure(path);
  PairSet s = c.unbounded ? paths_unbounded(g, f) : paths_F(g, f, *bound_of(c));
  if (c.json) {
    std::cout << json{{"fragment", f.to_string()}, {"pairs", pairs_json(s, g)}}.dump(2) << '\n';
  } else {
    print_pairs(s, g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indistinguishability in fragments of the calculus of relations"};
  app.require_subcommand(1);
  Common c;
  std::string expr_text_arg, path1, path2, dir = "two-sided";
  std::vector<std::string> pos;
  std::size_t subset_bits = 8, max_degree = 3;
  std::optional<std::size_t> max_size;
  bool no_witness = false, full = false;

  auto* eval = app.add_subcommand("eval", "Evaluate an expression on a structure");
  eval->add_option("expression", expr_text_arg)->required();
  eval->add_option("structure", path1)->required();
  eval->add_flag("--json", c.json);

  auto* decide = app.add_subcommand("decide", "Decide indistinguishability of two marked structures");
  add_common(decide, c);
  decide->add_option("marks", pos, "<structure> <a> <b> <structure> <a> <b>")->required();
  decide->add_option("--direction", dir, "one-sided or two-sided")->check(CLI::IsMember({"one-sided", "two-sided"}));
  decide->add_option("--max-subset-bits", subset_bits, "Node-count cap for witness construction");
  decide->add_flag("--no-witness", no_witness, "Skip witness construction");
  decide->add_flag("--full", full, "Print witnesses of any length");

  auto* maxbisim = app.add_subcommand("maxbisim", "Maximal (F,k)-bisimulation levels");
  add_common(maxbisim, c);
  maxbisim->add_option("structure1", path1)->required();
  maxbisim->add_option("structure2", path2)->required();

  auto* maxsim = app.add_subcommand("maxsim", "Maximal (F,k)-simulation levels");
  add_common(maxsim, c);
  maxsim->add_option("structure1", path1)->required();
  maxsim->add_option("structure2", path2)->required();

  auto* charexpr = app.add_subcommand("charexpr", "Characteristic expression of a marked structure");
  add_common(charexpr, c, false);
  charexpr->add_option("--degree,-k", c.degree, "Degree")->required();
  charexpr->add_option("mark", pos, "<structure> <a> <b>")->required();
  charexpr->add_option("--max-subset-bits", subset_bits, "Node-count cap for subset enumeration");
  charexpr->add_flag("--full", full, "Print expressions of any length");

  auto* distinguish = app.add_subcommand("distinguish", "Search for a smallest distinguishing expression");
  add_common(distinguish, c, false);
  distinguish->add_option("marks", pos, "<structure> <a> <b> <structure> <a> <b>")->required();
  distinguish->add_option("--direction", dir, "one-sided or two-sided")
      ->check(CLI::IsMember({"one-sided", "two-sided"}));
  distinguish->add_option("--max-size", max_size, "Largest expression size (default 9, or 7 with residuals)");
  distinguish->add_option("--max-degree", max_degree, "Largest degree");

  auto* paths = app.add_subcommand("paths", "The pair set bounding degree-k expressions");
  add_common(paths, c);
  paths->add_option("structure", path1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return run_eval(expr_text_arg, path1, c);
    if (*decide) return run_decide(c, pos, dir, subset_bits, !no_witness, full);
    if (*maxbisim) return run_maxbisim(c, path1, path2);
    if (*maxsim) return run_maxsim(c, path1, path2);
    if (*charexpr) return run_charexpr(c, pos, subset_bits, full);
    if (*distinguish) return run_distinguish(c, pos, dir, max_size, max_degree);
    if (*paths) return run_paths(c, path1);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
