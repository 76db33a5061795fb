#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regraph/errors.hpp"

namespace regraph {

using NodeId = int;

// A node set is kept sorted ascending with no duplicates.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::vector<NodeId> nodes);
bool set_contains(const NodeSet &s, NodeId v);
NodeSet set_union(const NodeSet &x, const NodeSet &y);
NodeSet set_intersection(const NodeSet &x, const NodeSet &y);
NodeSet set_difference(const NodeSet &x, const NodeSet &y);
bool set_disjoint(const NodeSet &x, const NodeSet &y);
bool is_subset(const NodeSet &x, const NodeSet &y);

enum class EdgeKind {
  Arrow,       // i <- j, j generated earlier than i
  DashedLine,  // i --- j, pair within one joint-response block
  FullLine,    // i -- j, pair within the context block
};

// One edge of a regression graph.  For an Arrow, `i` is the response and
// `j` lies in the past of i's block.  Undirected edges are stored with
// i < j.
struct Edge {
  NodeId i = 0;
  NodeId j = 0;
  EdgeKind kind = EdgeKind::Arrow;

  friend bool operator==(const Edge &a, const Edge &b) = default;
  friend auto operator<=>(const Edge &a, const Edge &b) = default;
};

// Ordered response blocks g_1, ..., g_K followed by the context set v.
// The generation order of the nodes is the concatenation of the blocks,
// each sorted ascending; v may be empty, response blocks may not.
struct BlockStructure {
  std::vector<NodeSet> response_blocks;
  NodeSet context;

  // All node labels in generation order: g_1, ..., g_K, v.
  std::vector<NodeId> generation_order() const;
  // All node labels sorted ascending.
  NodeSet all_nodes() const;
  // Block index of a node: 0..K-1 for responses, K for context,
  // -1 if the node is not present.
  int block_of(NodeId v) const;
  int response_block_count() const { return (int)response_blocks.size(); }
  // Nodes in the past of block k: g_{k+1} u ... u g_K u v.
  NodeSet past_of_block(int k) const;
  bool in_context(NodeId v) const { return set_contains(context, v); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Mixed-edge graph over ordered response blocks and a context block.
// Immutable after construction; parent graphs and the two pure undirected
// graph classes are special cases (see the factory helpers).
class RegressionGraph {
 public:
  RegressionGraph() = default;
  RegressionGraph(BlockStructure blocks, std::vector<Edge> edges);

  // DAG over singleton blocks in the order 1..d; arrows are (i, j) pairs
  // meaning i <- j.
  static RegressionGraph parent_graph(
      int d, const std::vector<std::pair<NodeId, NodeId>> &arrows);
  // v = N, full-line edges only.
  static RegressionGraph concentration_graph(
      int d, const std::vector<std::pair<NodeId, NodeId>> &lines);
  // u = N in one block, dashed edges only.
  static RegressionGraph covariance_graph(
      int d, const std::vector<std::pair<NodeId, NodeId>> &lines);

  const BlockStructure &blocks() const { return blocks_; }
  const std::vector<Edge> &edges() const { return edges_; }
  const NodeSet &nodes() const { return nodes_; }
  // Node labels in generation order (block concatenation).
  const std::vector<NodeId> &order() const { return order_; }
  int dim() const { return (int)nodes_.size(); }

  bool has_node(NodeId v) const { return set_contains(nodes_, v); }
  bool coupled(NodeId x, NodeId y) const;
  std::optional<Edge> edge_between(NodeId x, NodeId y) const;
  // Neighbours of x over any edge kind, ascending.
  NodeSet neighbours(NodeId x) const;
  // Parents of x: nodes j with an arrow x <- j.
  NodeSet parents(NodeId x) const;

  bool is_parent_graph() const;
  bool is_concentration_graph() const;
  bool is_covariance_graph() const;

 private:
  BlockStructure blocks_;
  std::vector<Edge> edges_;
  NodeSet nodes_;
  std::vector<NodeId> order_;
};

// Reports every violated well-formedness condition; empty report iff the
// graph is a valid regression graph.
ValidationReport validate(const RegressionGraph &g);

// Throws InvalidGraph unless validate(g) passes.
void require_valid(const RegressionGraph &g);

// Three-node two-edge subgraphs.  Arrow-arrow Vs keep the classic names;
// Vs with at least one undirected edge are classified as Collision or
// Transmitting only.
enum class VKind { Source, Transition, Sink, Collision, Transmitting };

// A collision V has an arrowhead or a dashed end on both edges at the
// inner node; all other Vs transmit.
bool is_collision(VKind k);

const char *to_string(VKind k);

struct VClass {
  NodeId inner = 0;
  std::pair<NodeId, NodeId> outer;  // unordered, stored with first < second

  VKind kind = VKind::Transmitting;

  friend bool operator==(const VClass &a, const VClass &b) = default;
};

// Enumerates every V of a valid graph, sorted by (inner, outer).
std::vector<VClass> classify_vs(const RegressionGraph &g);

// Induced subgraph on `keep`: nodes keep their labels, the block structure
// is restricted and emptied response blocks are dropped.
RegressionGraph subgraph(const RegressionGraph &g, const NodeSet &keep);

}  // namespace regraph
