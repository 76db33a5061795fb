#pragma once

#include <map>
#include <vector>

#include "regraph/gaussian.hpp"
#include "regraph/graph.hpp"
#include "regraph/independence.hpp"

namespace regraph {

// Symmetric binary model over a graph: each variable takes levels {-1,+1}
// with equal marginal probabilities, and each block conditional is linear
// in the past with coefficients eta.  Keys are ordered pairs (i, j) with j
// later than i in the generation order; a key within a block is the dashed
// pair's conditional covariance.  Response blocks may hold at most two
// nodes and the context block carries no edges.
struct SymBinaryModel {
  RegressionGraph graph;
  std::map<std::pair<NodeId, NodeId>, double> eta;

  double eta_at(NodeId i, NodeId j) const;
};

// Exact joint probability table over d binary {-1,+1} variables.  Cell
// index: bit (i-1) of the index is 0 for level +1 of node i and 1 for
// level -1; node 1 is the least significant bit.
struct JointTable {
  int dim = 0;
  NodeSet order;               // node labels 1..d
  std::vector<double> probs;   // size 2^dim

  std::vector<int> levels_of(std::size_t index) const;
  std::size_t index_of(const std::vector<int> &levels) const;
};

// Multiplies the block conditionals in the declared order.  Throws
// InvalidProbability when some level combination yields a conditional
// outside [0, 1], naming the offending assignment.
JointTable build_table(const SymBinaryModel &model);

// E(X_i X_j) of the table.
double correlation(const JointTable &table, NodeId i, NodeId j);

// E(prod_{i in s} X_i).
double moment(const JointTable &table, const NodeSet &s);

// Correlation matrix implied by the model's coefficients, built by the
// upward recursion over the generation order.
RealMatrix sigma_from_eta(const SymBinaryModel &model);

// Least-squares coefficients of each node on its full past, with the
// graph fixing which must vanish.  Throws NotRealizable when Sigma needs a
// coefficient at a missing edge or leaves some conditional outside [0, 1];
// SingularBlock when a past block of Sigma is singular.  Parent graphs
// only.
SymBinaryModel eta_from_sigma(const RealMatrix &sigma,
                              const RegressionGraph &g);

// Exact check of alpha _||_ beta | given in the table; the remaining
// variables are summed out and every conditional slice with positive
// probability must factorise within `tol`.
bool independence_in_table(const JointTable &table, const IndepQuery &q,
                           double tol = 1e-10);

}  // namespace regraph
