#include "regraph/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace regraph {

NodeSet make_node_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

bool set_contains(const NodeSet &s, NodeId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

NodeSet set_union(const NodeSet &x, const NodeSet &y) {
  NodeSet out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(),
                 std::back_inserter(out));
  return out;
}

NodeSet set_intersection(const NodeSet &x, const NodeSet &y) {
  NodeSet out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                        std::back_inserter(out));
  return out;
}

NodeSet set_difference(const NodeSet &x, const NodeSet &y) {
  NodeSet out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(),
                      std::back_inserter(out));
  return out;
}

bool set_disjoint(const NodeSet &x, const NodeSet &y) {
  return set_intersection(x, y).empty();
}

bool is_subset(const NodeSet &x, const NodeSet &y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<NodeId> BlockStructure::generation_order() const {
  std::vector<NodeId> order;
  for (const auto &g : response_blocks)
    order.insert(order.end(), g.begin(), g.end());
  order.insert(order.end(), context.begin(), context.end());
  return order;
}

NodeSet BlockStructure::all_nodes() const {
  return make_node_set(generation_order());
}

int BlockStructure::block_of(NodeId v) const {
  for (int k = 0; k < (int)response_blocks.size(); ++k)
    if (set_contains(response_blocks[k], v)) return k;
  if (set_contains(context, v)) return (int)response_blocks.size();
  return -1;
}

NodeSet BlockStructure::past_of_block(int k) const {
  NodeSet past = context;
  for (int t = k + 1; t < (int)response_blocks.size(); ++t)
    past = set_union(past, response_blocks[t]);
  return past;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "\n";
    os << violations[i];
  }
  return os.str();
}

namespace {

Edge canonical_edge(Edge e) {
  if (e.kind != EdgeKind::Arrow && e.i > e.j) std::swap(e.i, e.j);
  return e;
}

}  // namespace

RegressionGraph::RegressionGraph(BlockStructure blocks, std::vector<Edge> edges)
    : blocks_(std::move(blocks)) {
  for (auto &g : blocks_.response_blocks) g = make_node_set(std::move(g));
  blocks_.context = make_node_set(std::move(blocks_.context));
  edges_.reserve(edges.size());
  for (const Edge &e : edges) edges_.push_back(canonical_edge(e));
  std::sort(edges_.begin(), edges_.end());
  nodes_ = blocks_.all_nodes();
  order_ = blocks_.generation_order();
}

RegressionGraph RegressionGraph::parent_graph(
    int d, const std::vector<std::pair<NodeId, NodeId>> &arrows) {
  BlockStructure b;
  for (NodeId v = 1; v <= d; ++v) b.response_blocks.push_back({v});
  std::vector<Edge> es;
  for (auto [i, j] : arrows) es.push_back({i, j, EdgeKind::Arrow});
  return RegressionGraph(std::move(b), std::move(es));
}

RegressionGraph RegressionGraph::concentration_graph(
    int d, const std::vector<std::pair<NodeId, NodeId>> &lines) {
  BlockStructure b;
  for (NodeId v = 1; v <= d; ++v) b.context.push_back(v);
  std::vector<Edge> es;
  for (auto [i, j] : lines) es.push_back({i, j, EdgeKind::FullLine});
  return RegressionGraph(std::move(b), std::move(es));
}

RegressionGraph RegressionGraph::covariance_graph(
    int d, const std::vector<std::pair<NodeId, NodeId>> &lines) {
  BlockStructure b;
  NodeSet all;
  for (NodeId v = 1; v <= d; ++v) all.push_back(v);
  b.response_blocks.push_back(all);
  std::vector<Edge> es;
  for (auto [i, j] : lines) es.push_back({i, j, EdgeKind::DashedLine});
  return RegressionGraph(std::move(b), std::move(es));
}

bool RegressionGraph::coupled(NodeId x, NodeId y) const {
  return edge_between(x, y).has_value();
}

std::optional<Edge> RegressionGraph::edge_between(NodeId x, NodeId y) const {
  for (const Edge &e : edges_) {
    if ((e.i == x && e.j == y) || (e.i == y && e.j == x)) return e;
  }
  return std::nullopt;
}

NodeSet RegressionGraph::neighbours(NodeId x) const {
  NodeSet out;
  for (const Edge &e : edges_) {
    if (e.i == x) out.push_back(e.j);
    if (e.j == x) out.push_back(e.i);
  }
  return make_node_set(std::move(out));
}

NodeSet RegressionGraph::parents(NodeId x) const {
  NodeSet out;
  for (const Edge &e : edges_)
    if (e.kind == EdgeKind::Arrow && e.i == x) out.push_back(e.j);
  return make_node_set(std::move(out));
}

bool RegressionGraph::is_parent_graph() const {
  if (!blocks_.context.empty()) return false;
  for (const auto &g : blocks_.response_blocks)
    if (g.size() != 1) return false;
  for (const Edge &e : edges_)
    if (e.kind != EdgeKind::Arrow) return false;
  return true;
}

bool RegressionGraph::is_concentration_graph() const {
  return blocks_.response_blocks.empty();
}

bool RegressionGraph::is_covariance_graph() const {
  return blocks_.context.empty() && blocks_.response_blocks.size() == 1;
}

ValidationReport validate(const RegressionGraph &g) {
  ValidationReport rep;
  const BlockStructure &b = g.blocks();

  std::map<NodeId, int> seen;
  for (int k = 0; k < (int)b.response_blocks.size(); ++k) {
    if (b.response_blocks[k].empty())
      rep.violations.push_back("response block g" + std::to_string(k + 1) +
                               " is empty");
    for (NodeId v : b.response_blocks[k]) seen[v]++;
  }
  for (NodeId v : b.context) seen[v]++;
  for (auto [v, n] : seen) {
    if (n > 1)
      rep.violations.push_back("node " + std::to_string(v) +
                               " appears in more than one block");
  }

  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const Edge &e : g.edges()) {
    std::string name = "(" + std::to_string(e.i) + "," + std::to_string(e.j) +
                       ")";
    if (e.i == e.j) {
      rep.violations.push_back("self loop at node " + std::to_string(e.i));
      continue;
    }
    if (!g.has_node(e.i) || !g.has_node(e.j)) {
      rep.violations.push_back("edge " + name + " references an unknown node");
      continue;
    }
    auto key = std::minmax(e.i, e.j);
    if (!pairs.insert(key).second) {
      rep.violations.push_back("more than one edge for pair " + name);
      continue;
    }
    int bi = b.block_of(e.i);
    int bj = b.block_of(e.j);
    int K = b.response_block_count();
    switch (e.kind) {
      case EdgeKind::DashedLine:
        if (bi != bj || bi >= K)
          rep.violations.push_back("dashed edge crosses block boundary " +
                                   name);
        break;
      case EdgeKind::FullLine:
        if (bi < K || bj < K)
          rep.violations.push_back("full edge outside the context block " +
                                   name);
        break;
      case EdgeKind::Arrow:
        // e.i <- e.j requires e.j in the past of e.i's block.
        if (bi >= K || bj <= bi)
          rep.violations.push_back("arrow points into the past " + name);
        break;
    }
  }
  return rep;
}

void require_valid(const RegressionGraph &g) {
  ValidationReport rep = validate(g);
  if (!rep.ok()) throw InvalidGraph(rep.to_string());
}

namespace {

enum class End { Head, Tail, Dash, Full };

End end_at(const Edge &e, NodeId at) {
  switch (e.kind) {
    case EdgeKind::Arrow:
      return e.i == at ? End::Head : End::Tail;
    case EdgeKind::DashedLine:
      return End::Dash;
    case EdgeKind::FullLine:
      return End::Full;
  }
  return End::Full;
}

bool head_like(End e) { return e == End::Head || e == End::Dash; }

VKind v_kind(const Edge &a, const Edge &b, NodeId inner) {
  End ea = end_at(a, inner);
  End eb = end_at(b, inner);
  if (a.kind == EdgeKind::Arrow && b.kind == EdgeKind::Arrow) {
    bool ha = ea == End::Head, hb = eb == End::Head;
    if (ha && hb) return VKind::Sink;
    if (!ha && !hb) return VKind::Source;
    return VKind::Transition;
  }
  return head_like(ea) && head_like(eb) ? VKind::Collision
                                        : VKind::Transmitting;
}

}  // namespace

bool is_collision(VKind k) {
  return k == VKind::Sink || k == VKind::Collision;
}

const char *to_string(VKind k) {
  switch (k) {
    case VKind::Source: return "source";
    case VKind::Transition: return "transition";
    case VKind::Sink: return "sink";
    case VKind::Collision: return "collision";
    case VKind::Transmitting: return "transmitting";
  }
  return "?";
}

std::vector<VClass> classify_vs(const RegressionGraph &g) {
  require_valid(g);
  std::vector<VClass> out;
  for (NodeId inner : g.nodes()) {
    NodeSet nb = g.neighbours(inner);
    for (size_t s = 0; s < nb.size(); ++s) {
      for (size_t t = s + 1; t < nb.size(); ++t) {
        if (g.coupled(nb[s], nb[t])) continue;
        Edge ea = *g.edge_between(inner, nb[s]);
        Edge eb = *g.edge_between(inner, nb[t]);
        out.push_back({inner, {nb[s], nb[t]}, v_kind(ea, eb, inner)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VClass &a, const VClass &b) {
    return std::tie(a.inner, a.outer) < std::tie(b.inner, b.outer);
  });
  return out;
}

RegressionGraph subgraph(const RegressionGraph &g, const NodeSet &keep) {
  for (NodeId v : keep)
    if (!g.has_node(v))
      throw UnknownNode("subgraph: unknown node " + std::to_string(v));
  BlockStructure b;
  for (const auto &blk : g.blocks().response_blocks) {
    NodeSet r = set_intersection(blk, keep);
    if (!r.empty()) b.response_blocks.push_back(std::move(r));
  }
  b.context = set_intersection(g.blocks().context, keep);
  std::vector<Edge> es;
  for (const Edge &e : g.edges())
    if (set_contains(keep, e.i) && set_contains(keep, e.j)) es.push_back(e);
  return RegressionGraph(std::move(b), std::move(es));
}

}  // namespace regraph
