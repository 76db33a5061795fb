#include "regraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace regraph::io {

namespace {

using nlohmann::json;

// Single-line scanner with column tracking.
struct Scanner {
  const std::string &s;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError(line, (int)pos + 1, msg);
  }
  bool try_literal(const std::string &lit) {
    skip_ws();
    if (s.compare(pos, lit.size(), lit) == 0) {
      pos += lit.size();
      return true;
    }
    return false;
  }
  void literal(const std::string &lit) {
    if (!try_literal(lit)) fail("expected '" + lit + "'");
  }
  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) fail("expected a node number");
    int v = 0;
    std::from_chars(s.data() + start, s.data() + pos, v);
    return v;
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }
  NodeSet node_list_braced() {
    literal("{");
    NodeSet out;
    skip_ws();
    if (try_literal("}")) return out;
    while (true) {
      out.push_back(integer());
      skip_ws();
      if (try_literal("}")) break;
      literal(",");
    }
    return make_node_set(std::move(out));
  }
};

std::vector<std::pair<int, std::string>> logical_lines(
    const std::string &text) {
  std::vector<std::pair<int, std::string>> lines;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    size_t a = raw.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = raw.find_last_not_of(" \t\r");
    lines.push_back({n, raw.substr(a, b - a + 1)});
  }
  return lines;
}

}  // namespace

RegressionGraph parse_graph(const std::string &text) {
  auto lines = logical_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty graph file");
  size_t at = 0;

  Scanner header{lines[at].second, lines[at].first};
  header.literal("nodes");
  header.literal(":");
  int d = header.integer();
  if (d < 0) header.fail("node count must be nonnegative");
  ++at;

  BlockStructure blocks;
  if (at >= lines.size())
    throw ParseError(lines.back().first + 1, 1, "missing blocks line");
  {
    Scanner sc{lines[at].second, lines[at].first};
    sc.literal("blocks");
    sc.literal(":");
    if (sc.try_literal("singletons")) {
      for (NodeId v = 1; v <= d; ++v) blocks.response_blocks.push_back({v});
    } else {
      int next_g = 1;
      bool saw_context = false;
      while (!sc.done()) {
        std::string name = sc.word();
        sc.literal("=");
        NodeSet set = sc.node_list_braced();
        if (name == "v") {
          if (saw_context) sc.fail("context block declared twice");
          saw_context = true;
          blocks.context = std::move(set);
        } else if (name == "g" + std::to_string(next_g)) {
          if (saw_context) sc.fail("response block after the context block");
          blocks.response_blocks.push_back(std::move(set));
          ++next_g;
        } else {
          sc.fail("expected block g" + std::to_string(next_g) + " or v");
        }
        if (sc.done()) break;
        sc.literal(";");
      }
    }
    ++at;
  }

  std::vector<Edge> edges;
  for (; at < lines.size(); ++at) {
    Scanner sc{lines[at].second, lines[at].first};
    std::string kind = sc.word();
    if (kind == "arrow") {
      int i = sc.integer();
      sc.literal("<");
      int j = sc.integer();
      edges.push_back({i, j, EdgeKind::Arrow});
    } else if (kind == "dashed") {
      int i = sc.integer();
      sc.literal("--");
      int j = sc.integer();
      edges.push_back({i, j, EdgeKind::DashedLine});
    } else if (kind == "full") {
      int i = sc.integer();
      sc.literal("-");
      int j = sc.integer();
      edges.push_back({i, j, EdgeKind::FullLine});
    } else {
      sc.fail("expected an edge line (arrow/dashed/full)");
    }
    if (!sc.done()) sc.fail("trailing text after edge");
  }

  RegressionGraph g(std::move(blocks), std::move(edges));
  if (g.dim() != d)
    throw ParseError(lines[0].first, 1,
                     "blocks cover " + std::to_string(g.dim()) +
                         " nodes but the header declares " +
                         std::to_string(d));
  for (NodeId v : g.nodes())
    if (v < 1 || v > d)
      throw ParseError(lines[0].first, 1,
                       "node " + std::to_string(v) + " outside 1.." +
                           std::to_string(d));
  require_valid(g);  // surfaces validation failures as InvalidGraph
  return g;
}

std::string emit_graph(const RegressionGraph &g) {
  std::ostringstream os;
  os << "nodes: " << g.dim() << "\n";
  os << "blocks:";
  bool first = true;
  auto emit_set = [&](const std::string &name, const NodeSet &s) {
    os << (first ? " " : "; ") << name << "={";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    first = false;
  };
  for (size_t k = 0; k < g.blocks().response_blocks.size(); ++k)
    emit_set("g" + std::to_string(k + 1), g.blocks().response_blocks[k]);
  if (!g.blocks().context.empty()) emit_set("v", g.blocks().context);
  os << "\n";
  for (const Edge &e : g.edges()) {
    switch (e.kind) {
      case EdgeKind::Arrow:
        os << "arrow " << e.i << " < " << e.j << "\n";
        break;
      case EdgeKind::DashedLine:
        os << "dashed " << e.i << " -- " << e.j << "\n";
        break;
      case EdgeKind::FullLine:
        os << "full " << e.i << " - " << e.j << "\n";
        break;
    }
  }
  return os.str();
}

IndepQuery parse_query(const std::string &text) {
  size_t sep = text.find("_||_");
  if (sep == std::string::npos)
    throw ParseError(1, 1, "query must contain '_||_'");
  std::string left = text.substr(0, sep);
  std::string rest = text.substr(sep + 4);
  std::string mid = rest, cond;
  size_t bar = rest.find('|');
  if (bar != std::string::npos) {
    mid = rest.substr(0, bar);
    cond = rest.substr(bar + 1);
  }
  auto parse_list = [&](const std::string &part, int col0) {
    NodeSet out;
    Scanner sc{part, 1};
    sc.pos = 0;
    if (sc.done()) return out;
    while (true) {
      sc.skip_ws();
      size_t before = sc.pos;
      while (sc.pos < part.size() &&
             std::isdigit((unsigned char)part[sc.pos]))
        ++sc.pos;
      if (sc.pos == before)
        throw ParseError(1, col0 + (int)sc.pos + 1, "expected a node number");
      int v = 0;
      std::from_chars(part.data() + before, part.data() + sc.pos, v);
      out.push_back(v);
      if (sc.done()) break;
      if (!sc.try_literal(","))
        throw ParseError(1, col0 + (int)sc.pos + 1, "expected ','");
    }
    return out;
  };
  NodeSet alpha = parse_list(left, 0);
  NodeSet beta = parse_list(mid, (int)sep + 4);
  NodeSet given =
      bar == std::string::npos
          ? NodeSet{}
          : parse_list(cond, (int)(sep + 4 + bar) + 1);
  if (alpha.empty() || beta.empty())
    throw ParseError(1, 1, "both sides of '_||_' need at least one node");
  return make_query(alpha, beta, given);  // throws InvalidPartition
}

std::string emit_query(const IndepQuery &q) {
  auto list = [](const NodeSet &s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i)
      out += (i ? "," : "") + std::to_string(s[i]);
    return out;
  };
  std::string out = list(q.alpha) + " _||_ " + list(q.beta);
  if (!q.given.empty()) out += " | " + list(q.given);
  return out;
}

std::string emit_dot(const RegressionGraph &g) {
  std::ostringstream os;
  os << "digraph G {\n  node [shape=circle];\n";
  for (NodeId v : g.nodes()) os << "  " << v << ";\n";
  for (const Edge &e : g.edges()) {
    switch (e.kind) {
      case EdgeKind::Arrow:
        os << "  " << e.j << " -> " << e.i << ";\n";
        break;
      case EdgeKind::DashedLine:
        os << "  " << e.i << " -> " << e.j << " [dir=none, style=dashed];\n";
        break;
      case EdgeKind::FullLine:
        os << "  " << e.i << " -> " << e.j << " [dir=none];\n";
        break;
    }
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot(const InducedEdgeSet &ind) {
  std::ostringstream os;
  os << "digraph induced {\n  node [shape=circle];\n";
  for (NodeId v : ind.margin) os << "  " << v << ";\n";
  for (NodeId v : ind.condition) os << "  " << v << " [shape=box];\n";
  const EdgeMatrix &s = ind.cov_aa;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = i + 1; j < s.cols(); ++j)
      if (s.at(i, j))
        os << "  " << ind.margin[i] << " -> " << ind.margin[j]
           << " [dir=none, style=dashed];\n";
  const EdgeMatrix &p = ind.arrows_ab;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.at(i, j))
        os << "  " << ind.condition[j] << " -> " << ind.margin[i] << ";\n";
  const EdgeMatrix &c = ind.con_bb;
  for (int i = 0; i < c.rows(); ++i)
    for (int j = i + 1; j < c.cols(); ++j)
      if (c.at(i, j))
        os << "  " << ind.condition[i] << " -> " << ind.condition[j]
           << " [dir=none];\n";
  os << "}\n";
  return os.str();
}

namespace {

json matrix_rows_json(const EdgeMatrix &m) {
  json rows = json::array();
  for (const auto &r : m.to_rows()) rows.push_back(r);
  return rows;
}

}  // namespace

std::string edge_matrix_to_json(const EdgeMatrix &m) {
  json j;
  j["order"] = m.order();
  j["rows"] = matrix_rows_json(m);
  return j.dump(2) + "\n";
}

EdgeMatrix edge_matrix_from_json(const std::string &text) {
  json j = json::parse(text);
  std::vector<NodeId> order = j.at("order").get<std::vector<NodeId>>();
  EdgeMatrix m(order);
  auto rows = j.at("rows");
  if ((int)rows.size() != m.rows())
    throw DimensionMismatch("edge matrix json: row count mismatch");
  for (int i = 0; i < m.rows(); ++i) {
    if ((int)rows[i].size() != m.cols())
      throw DimensionMismatch("edge matrix json: column count mismatch");
    for (int c = 0; c < m.cols(); ++c) {
      int v = rows[i][c].get<int>();
      if (v != 0 && v != 1)
        throw ParseError(1, 1, "edge matrix entries must be 0 or 1");
      m.set(i, c, v != 0);
    }
  }
  return m;
}

std::string induced_to_json(const InducedEdgeSet &ind) {
  json j;
  j["margin"] = ind.margin;
  j["condition"] = ind.condition;
  j["cov_aa"] = matrix_rows_json(ind.cov_aa);
  j["arrows_ab"] = matrix_rows_json(ind.arrows_ab);
  j["con_bb"] = matrix_rows_json(ind.con_bb);
  return j.dump(2) + "\n";
}

std::string real_matrix_to_json(const RealMatrix &m,
                                const std::vector<NodeId> &order) {
  json j;
  j["order"] = order;
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  j["values"] = rows;
  return j.dump(2) + "\n";
}

std::pair<RealMatrix, std::vector<NodeId>> real_matrix_from_json(
    const std::string &text) {
  json j = json::parse(text);
  std::vector<NodeId> order = j.at("order").get<std::vector<NodeId>>();
  auto rows = j.at("values");
  RealMatrix m((int)rows.size(), order.size());
  for (int i = 0; i < m.rows(); ++i) {
    if ((int)rows[i].size() != m.cols())
      throw DimensionMismatch("real matrix json: column count mismatch");
    for (int c = 0; c < m.cols(); ++c) m(i, c) = rows[i][c].get<double>();
  }
  return {std::move(m), std::move(order)};
}

std::string table_to_json(const JointTable &t) {
  json j;
  j["dim"] = t.dim;
  j["order"] = t.order;
  j["probs"] = t.probs;
  return j.dump(2) + "\n";
}

std::string table_to_csv(const JointTable &t) {
  std::ostringstream os;
  for (int i = 0; i < t.dim; ++i) os << "x" << (i + 1) << ",";
  os << "p\n";
  char buf[64];
  for (std::size_t idx = 0; idx < t.probs.size(); ++idx) {
    std::vector<int> levels = t.levels_of(idx);
    for (int v : levels) os << (v > 0 ? "+1" : "-1") << ",";
    auto res = std::to_chars(buf, buf + sizeof buf, t.probs[idx]);
    os.write(buf, res.ptr - buf);
    os << "\n";
  }
  return os.str();
}

std::string eta_to_json(const SymBinaryModel &m) {
  json j = json::object();
  for (const auto &[key, value] : m.eta) {
    j[std::to_string(key.first) + "<-" + std::to_string(key.second)] = value;
  }
  return j.dump(2) + "\n";
}

std::map<std::pair<NodeId, NodeId>, double> eta_from_json(
    const std::string &text) {
  json j = json::parse(text);
  std::map<std::pair<NodeId, NodeId>, double> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &key = it.key();
    size_t sep = key.find("<-");
    if (sep == std::string::npos)
      throw ParseError(1, 1, "eta key must look like \"i<-j\"");
    int i = std::stoi(key.substr(0, sep));
    int jj = std::stoi(key.substr(sep + 2));
    out[{i, jj}] = it.value().get<double>();
  }
  return out;
}

std::string edge_matrix_to_text(const EdgeMatrix &m) {
  std::ostringstream os;
  int width = 1;
  for (NodeId v : m.col_order())
    width = std::max(width, (int)std::to_string(v).size());
  int rw = 1;
  for (NodeId v : m.row_order())
    rw = std::max(rw, (int)std::to_string(v).size());
  os << std::string(rw + 2, ' ');
  for (NodeId v : m.col_order()) {
    std::string s = std::to_string(v);
    os << std::string(width + 1 - s.size(), ' ') << s;
  }
  os << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    std::string s = std::to_string(m.row_order()[i]);
    os << std::string(rw - s.size(), ' ') << s << " |";
    for (int c = 0; c < m.cols(); ++c)
      os << std::string(width, ' ') << (m.at(i, c) ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

}  // namespace regraph::io
