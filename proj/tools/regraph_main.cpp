// Command-line front end: graph validation, V classification, induced
// graphs, independence queries, Markov equivalence, Gaussian audits,
// binary tables and the two matrix operators.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "regraph/binary.hpp"
#include "regraph/edge_matrix.hpp"
#include "regraph/gaussian.hpp"
#include "regraph/graph.hpp"
#include "regraph/independence.hpp"
#include "regraph/io.hpp"

namespace {

using namespace regraph;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

NodeSet parse_list(const std::string &text) {
  NodeSet out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    size_t a = token.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = token.find_last_not_of(" \t");
    out.push_back(std::stoi(token.substr(a, b - a + 1)));
  }
  return make_node_set(std::move(out));
}

RegressionGraph load_graph(const std::string &path) {
  return io::parse_graph(slurp(path));
}

struct Options {
  std::string graph_file;
  std::string matrix_file;
  std::string margin;
  std::string condition;
  std::string query;
  std::string eta_file;
  std::string out = "json";
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

int cmd_validate(const Options &opt) {
  RegressionGraph g = [&] {
    try {
      return load_graph(opt.graph_file);
    } catch (const InvalidGraph &e) {
      std::cout << e.what() << "\n";
      std::exit(kExitDomain);
    }
  }();
  std::cout << validate(g).to_string() << "\n";
  return 0;
}

int cmd_vs(const Options &opt) {
  RegressionGraph g = load_graph(opt.graph_file);
  std::vector<VClass> vs = classify_vs(g);
  if (opt.out == "json") {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < vs.size(); ++i) {
      os << (i ? ",\n " : "\n ") << "{\"inner\": " << vs[i].inner
         << ", \"outer\": [" << vs[i].outer.first << ", "
         << vs[i].outer.second << "], \"kind\": \"" << to_string(vs[i].kind)
         << "\"}";
    }
    os << (vs.empty() ? "]" : "\n]");
    std::cout << os.str() << "\n";
  } else {
    for (const VClass &v : vs)
      std::cout << to_string(v.kind) << " (" << v.outer.first << ", "
                << v.inner << ", " << v.outer.second << ")\n";
  }
  return 0;
}

int cmd_induce(const Options &opt) {
  RegressionGraph g = load_graph(opt.graph_file);
  NodeSet a = parse_list(opt.margin);
  if (!opt.condition.empty()) {
    NodeSet c = parse_list(opt.condition);
    NodeSet rest = set_difference(g.nodes(), a);
    if (c != rest)
      throw InvalidSplit("margin and condition must partition the node set");
  }
  InducedEdgeSet ind = induced_regression(g, a);
  if (opt.out == "dot") {
    std::cout << io::emit_dot(ind);
  } else if (opt.out == "text") {
    std::cout << "dashed among margin | conditioned:\n"
              << io::edge_matrix_to_text(ind.cov_aa)
              << "arrows condition -> margin:\n"
              << io::edge_matrix_to_text(ind.arrows_ab)
              << "full lines among condition:\n"
              << io::edge_matrix_to_text(ind.con_bb);
  } else {
    std::cout << io::induced_to_json(ind);
  }
  return 0;
}

int cmd_query(const Options &opt) {
  RegressionGraph g = load_graph(opt.graph_file);
  IndepQuery q = io::parse_query(opt.query);
  std::cout << (separated(g, q) ? "independent" : "dependent") << "\n";
  return 0;
}

int cmd_equiv(const std::string &file1, const std::string &file2) {
  RegressionGraph g1 = load_graph(file1);
  RegressionGraph g2 = load_graph(file2);
  std::cout << "markov-equivalent: "
            << (markov_equivalent(g1, g2) ? "true" : "false") << "\n";
  return 0;
}

int cmd_gaussian_audit(const Options &opt) {
  RegressionGraph g = load_graph(opt.graph_file);
  NodeSet a = parse_list(opt.margin);
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < 5; ++k) seeds.push_back(opt.seed + (std::uint64_t)k);
  AuditReport rep = structural_zero_audit(g, a, seeds, opt.tol);
  std::cout << rep.summary() << "\n";
  return rep.passed() ? 0 : kExitDomain;
}

int cmd_binary_table(const Options &opt) {
  RegressionGraph g = load_graph(opt.graph_file);
  SymBinaryModel model;
  model.graph = g;
  if (!opt.eta_file.empty()) {
    model.eta = io::eta_from_json(slurp(opt.eta_file));
  } else {
    // Sample coefficients at the edges, scaled into the valid region.
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> mag(0.2, 0.9);
    std::bernoulli_distribution flip(0.5);
    for (const Edge &e : g.edges()) {
      double v = mag(rng);
      model.eta[{e.i, e.j}] = flip(rng) ? -v : v;
    }
    for (NodeId i : g.nodes()) {
      double s = 0;
      for (const auto &[key, value] : model.eta)
        if (key.first == i) s += std::abs(value);
      if (s >= 1.0)
        for (auto &[key, value] : model.eta)
          if (key.first == i) value *= 0.95 / s;
    }
  }
  JointTable t = build_table(model);
  if (opt.out == "csv")
    std::cout << io::table_to_csv(t);
  else
    std::cout << io::table_to_json(t);
  return 0;
}

int cmd_closure(const Options &opt) {
  EdgeMatrix m = io::edge_matrix_from_json(slurp(opt.matrix_file));
  EdgeMatrix out = partial_closure(m, parse_list(opt.margin));
  if (opt.out == "text")
    std::cout << io::edge_matrix_to_text(out);
  else
    std::cout << io::edge_matrix_to_json(out);
  return 0;
}

int cmd_invert(const Options &opt) {
  auto [m, order] = io::real_matrix_from_json(slurp(opt.matrix_file));
  NodeSet a = parse_list(opt.margin);
  std::vector<int> positions;
  for (NodeId v : a) {
    auto it = std::find(order.begin(), order.end(), v);
    if (it == order.end())
      throw UnknownNode("invert: node " + std::to_string(v) +
                        " not in matrix order");
    positions.push_back((int)(it - order.begin()));
  }
  RealMatrix out = partial_inversion(m, positions);
  std::cout << io::real_matrix_to_json(out, order);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"regression graph engine"};
  app.require_subcommand(1);
  Options opt;

  auto add_graph = [&](CLI::App *c) {
    c->add_option("--graph", opt.graph_file, "graph file (.rg)")->required();
  };
  auto add_out = [&](CLI::App *c) {
    c->add_option("--out", opt.out, "output format: dot, json or text")
        ->check(CLI::IsMember({"dot", "json", "text"}));
  };

  CLI::App *validate = app.add_subcommand("validate", "validate a graph file");
  add_graph(validate);

  CLI::App *vs = app.add_subcommand("vs", "list the Vs of a graph");
  add_graph(vs);
  add_out(vs);

  CLI::App *induce = app.add_subcommand(
      "induce", "induced edge matrices for a margin/condition split");
  add_graph(induce);
  induce->add_option("--margin", opt.margin, "nodes marginalised over");
  induce->add_option("--condition", opt.condition,
                     "nodes conditioned on (defaults to the rest)");
  add_out(induce);

  CLI::App *query = app.add_subcommand("query", "decide alpha _||_ beta | c");
  add_graph(query);
  query->add_option("--query", opt.query, "e.g. \"1,2 _||_ 5 | 3,4\"")
      ->required();

  CLI::App *equiv =
      app.add_subcommand("equiv", "Markov equivalence of two graphs");
  std::string file1, file2;
  equiv->add_option("first", file1, "first graph file")->required();
  equiv->add_option("second", file2, "second graph file")->required();

  CLI::App *audit = app.add_subcommand(
      "gaussian-audit", "check structural zeros against sampled Gaussians");
  add_graph(audit);
  audit->add_option("--margin", opt.margin, "nodes marginalised over");
  audit->add_option("--seed", opt.seed, "base seed (uses seed..seed+4)");
  audit->add_option("--tol", opt.tol, "zero tolerance");

  CLI::App *table = app.add_subcommand(
      "binary-table", "exact joint table of a symmetric binary model");
  add_graph(table);
  table->add_option("--seed", opt.seed, "seed for sampled coefficients");
  table->add_option("--eta", opt.eta_file, "coefficient file (json)");
  table->add_option("--out", opt.out, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App *closure =
      app.add_subcommand("closure", "partial closure of a binary matrix");
  closure->add_option("--matrix", opt.matrix_file, "edge matrix json")
      ->required();
  closure->add_option("--margin", opt.margin, "nodes to close over");
  add_out(closure);

  CLI::App *invert =
      app.add_subcommand("invert", "partial inversion of a real matrix");
  invert->add_option("--matrix", opt.matrix_file, "real matrix json")
      ->required();
  invert->add_option("--margin", opt.margin, "nodes to invert on");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(opt);
    if (app.got_subcommand(vs)) return cmd_vs(opt);
    if (app.got_subcommand(induce)) return cmd_induce(opt);
    if (app.got_subcommand(query)) return cmd_query(opt);
    if (app.got_subcommand(equiv)) return cmd_equiv(file1, file2);
    if (app.got_subcommand(audit)) return cmd_gaussian_audit(opt);
    if (app.got_subcommand(table)) return cmd_binary_table(opt);
    if (app.got_subcommand(closure)) return cmd_closure(opt);
    if (app.got_subcommand(invert)) return cmd_invert(opt);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
