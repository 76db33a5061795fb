#include "regraph/independence.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace regraph {

IndepQuery make_query(std::vector<NodeId> alpha, std::vector<NodeId> beta,
                      std::vector<NodeId> given) {
  IndepQuery q{make_node_set(std::move(alpha)), make_node_set(std::move(beta)),
               make_node_set(std::move(given))};
  if (q.alpha.empty() || q.beta.empty())
    throw InvalidPartition("query: alpha and beta must be nonempty");
  if (!set_disjoint(q.alpha, q.beta) || !set_disjoint(q.alpha, q.given) ||
      !set_disjoint(q.beta, q.given))
    throw InvalidPartition("query: alpha, beta and the conditioning set "
                           "must be disjoint");
  return q;
}

void require_partition(const RegressionGraph &g, const IndepQuery &q) {
  if (q.alpha.empty() || q.beta.empty())
    throw InvalidPartition("query: alpha and beta must be nonempty");
  if (!set_disjoint(q.alpha, q.beta) || !set_disjoint(q.alpha, q.given) ||
      !set_disjoint(q.beta, q.given))
    throw InvalidPartition("query: sets must be disjoint");
  for (const NodeSet *s : {&q.alpha, &q.beta, &q.given})
    for (NodeId v : *s)
      if (!g.has_node(v))
        throw InvalidPartition("query: unknown node " + std::to_string(v));
}

AnteriorGraph::AnteriorGraph(const RegressionGraph &base, NodeSet a)
    : base_(base), a_(std::move(a)) {
  for (NodeId v : a_)
    if (!base_.has_node(v))
      throw UnknownNode("anterior_graph: unknown node " + std::to_string(v));
  k_ = partial_closure(regression_edge_matrices(base_).h, a_);
}

std::vector<Edge> AnteriorGraph::edges() const {
  std::vector<Edge> out;
  const std::vector<NodeId> &order = k_.order();
  for (int i = 0; i < k_.rows(); ++i) {
    bool iv = base_.blocks().in_context(order[i]);
    for (int j = 0; j < k_.cols(); ++j) {
      if (i == j || !k_.at(i, j)) continue;
      bool jv = base_.blocks().in_context(order[j]);
      if (iv && jv) {
        if (order[i] < order[j])
          out.push_back({order[i], order[j], EdgeKind::FullLine});
      } else {
        out.push_back({order[i], order[j], EdgeKind::Arrow});
      }
    }
  }
  for (const Edge &e : base_.edges())
    if (e.kind == EdgeKind::DashedLine) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

AnteriorGraph anterior_graph(const RegressionGraph &g, const NodeSet &a) {
  require_valid(g);
  return AnteriorGraph(g, a);
}

bool separated_by_matrix(const RegressionEdgeMatrices &em, const NodeSet &all,
                         const IndepQuery &q) {
  NodeSet m = set_difference(
      set_difference(set_difference(all, q.alpha), q.beta), q.given);
  NodeSet a = set_union(q.alpha, m);
  InducedEdgeSet ind = induced_regression(em, a);
  for (NodeId x : q.alpha) {
    int r = ind.arrows_ab.row_position(x);
    for (NodeId y : q.beta)
      if (ind.arrows_ab.at(r, ind.arrows_ab.col_position(y))) return false;
  }
  return true;
}

bool separated_by_matrix(const RegressionGraph &g, const IndepQuery &q) {
  require_partition(g, q);
  return separated_by_matrix(regression_edge_matrices(g), g.nodes(), q);
}

bool separated(const RegressionGraph &g, const IndepQuery &q) {
  return separated_by_matrix(g, q);
}

namespace {

using OuterPair = std::pair<NodeId, NodeId>;

std::set<std::pair<NodeId, OuterPair>> collision_set(
    const RegressionGraph &g) {
  std::set<std::pair<NodeId, OuterPair>> out;
  for (const VClass &v : classify_vs(g))
    if (is_collision(v.kind)) out.insert({v.inner, v.outer});
  return out;
}

std::set<OuterPair> skeleton(const RegressionGraph &g) {
  std::set<OuterPair> out;
  for (const Edge &e : g.edges()) out.insert(std::minmax(e.i, e.j));
  return out;
}

}  // namespace

bool markov_equivalent(const RegressionGraph &g1, const RegressionGraph &g2) {
  require_valid(g1);
  require_valid(g2);
  if (g1.nodes() != g2.nodes()) return false;
  if (skeleton(g1) != skeleton(g2)) return false;
  return collision_set(g1) == collision_set(g2);
}

bool singleton_transitivity_check(const RegressionGraph &g, NodeId i, NodeId j,
                                  NodeId h, const NodeSet &c) {
  if (i == j || i == h || j == h)
    throw InvalidPartition("singleton transitivity: nodes must be distinct");
  if (set_contains(c, i) || set_contains(c, j) || set_contains(c, h))
    throw InvalidPartition("singleton transitivity: c overlaps {i,j,h}");
  RegressionEdgeMatrices em = regression_edge_matrices(g);
  const NodeSet &all = g.nodes();
  IndepQuery ij_c = make_query({i}, {j}, c);
  require_partition(g, ij_c);
  if (!separated_by_matrix(em, all, ij_c)) return true;
  NodeSet ch = set_union(c, {h});
  if (!separated_by_matrix(em, all, make_query({i}, {j}, ch))) return true;
  return separated_by_matrix(em, all, make_query({i}, {h}, c)) ||
         separated_by_matrix(em, all, make_query({j}, {h}, c));
}

}  // namespace regraph
