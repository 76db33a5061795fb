#pragma once

#include <vector>

#include "regraph/edge_matrix.hpp"
#include "regraph/graph.hpp"

namespace regraph {

// A query "alpha _||_ beta | given"; the remaining nodes m are implicitly
// marginalised over.  alpha and beta must be nonempty and the three sets
// pairwise disjoint.
struct IndepQuery {
  NodeSet alpha;
  NodeSet beta;
  NodeSet given;
};

// Validates and canonicalises a query; throws InvalidPartition.
IndepQuery make_query(std::vector<NodeId> alpha, std::vector<NodeId> beta,
                      std::vector<NodeId> given);

// Throws InvalidPartition unless q is a valid partition of g's nodes.
void require_partition(const RegressionGraph &g, const IndepQuery &q);

// The a-line anterior graph: every a-line anterior of a response becomes a
// parent, a-line context paths are closed, dashed edges are kept.  Its
// arrow/full-line structure is the partial closure of H over a.
class AnteriorGraph {
 public:
  AnteriorGraph(const RegressionGraph &base, NodeSet a);

  const RegressionGraph &base() const { return base_; }
  const NodeSet &line_set() const { return a_; }
  const EdgeMatrix &edge_matrix() const { return k_; }

  // All edges of the anterior graph, canonically sorted.
  std::vector<Edge> edges() const;

 private:
  RegressionGraph base_;
  NodeSet a_;
  EdgeMatrix k_;
};

AnteriorGraph anterior_graph(const RegressionGraph &g, const NodeSet &a);

// Whether the graph implies alpha _||_ beta | given.  The engine is the
// edge-matrix criterion: the alpha x beta part of the induced arrow matrix
// for the split a = alpha u m must vanish.
bool separated(const RegressionGraph &g, const IndepQuery &q);
bool separated_by_matrix(const RegressionGraph &g, const IndepQuery &q);

// Same criterion with precomputed edge matrices; used by bulk callers.
bool separated_by_matrix(const RegressionEdgeMatrices &em, const NodeSet &all,
                         const IndepQuery &q);

// Two graphs on the same node set define the same independence structure
// iff their skeletons and their collision-V sets coincide.
bool markov_equivalent(const RegressionGraph &g1, const RegressionGraph &g2);

// (i _||_ j | c and i _||_ j | c u {h}) implies (i _||_ h | c or
// j _||_ h | c); returns the truth of that implication for the graph.
bool singleton_transitivity_check(const RegressionGraph &g, NodeId i, NodeId j,
                                  NodeId h, const NodeSet &c);

}  // namespace regraph
