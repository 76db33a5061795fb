#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "regraph/graph.hpp"

namespace regraph {

// Binary matrix with labelled rows and columns, stored as per-row bitsets.
// Graph edge matrices are square with row order == column order; the
// rectangular shape only occurs for induced arrow matrices.
class EdgeMatrix {
 public:
  EdgeMatrix() = default;
  EdgeMatrix(std::vector<NodeId> row_order, std::vector<NodeId> col_order);
  // Square zero matrix.
  explicit EdgeMatrix(std::vector<NodeId> order);
  static EdgeMatrix identity(std::vector<NodeId> order);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && row_order_ == col_order_; }
  const std::vector<NodeId> &row_order() const { return row_order_; }
  const std::vector<NodeId> &col_order() const { return col_order_; }
  // Order of a square matrix.
  const std::vector<NodeId> &order() const { return row_order_; }

  bool at(int r, int c) const {
    return (words_[(size_t)r * stride_ + (size_t)(c >> 6)] >>
            (c & 63)) & 1u;
  }
  void set(int r, int c, bool v);

  // Position lookup by node label; throws UnknownNode.
  int row_position(NodeId v) const;
  int col_position(NodeId v) const;
  bool at_labels(NodeId r, NodeId c) const {
    return at(row_position(r), col_position(c));
  }

  bool has_unit_diagonal() const;
  bool is_symmetric() const;
  // Unit diagonal and zeros below the diagonal in the stored order.
  bool is_unit_upper_triangular() const;

  int count_ones() const;
  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const EdgeMatrix &a, const EdgeMatrix &b);

  // Row r as words; used by the closure and product kernels.
  const std::uint64_t *row_words(int r) const {
    return words_.data() + (size_t)r * stride_;
  }
  std::uint64_t *row_words(int r) { return words_.data() + (size_t)r * stride_; }
  int stride() const { return stride_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  int stride_ = 0;  // words per row
  std::vector<NodeId> row_order_;
  std::vector<NodeId> col_order_;
  std::vector<std::uint64_t> words_;
};

// In[.]: binary indicator of a nonnegative integer matrix; throws
// NegativeEntry.  Row/column labels default to 1..n.
EdgeMatrix indicator(const std::vector<std::vector<long long>> &m);
EdgeMatrix indicator(const std::vector<std::vector<long long>> &m,
                     std::vector<NodeId> order);

// In[a b] for position sets on a common square order.
EdgeMatrix bool_product(const EdgeMatrix &a, const EdgeMatrix &b);
EdgeMatrix bool_sum(const EdgeMatrix &a, const EdgeMatrix &b);
EdgeMatrix transpose(const EdgeMatrix &m);
EdgeMatrix submatrix(const EdgeMatrix &m, const std::vector<int> &row_pos,
                     const std::vector<int> &col_pos);

// zer_a: closes every a-line path of the graph represented by M; all ones
// of M are preserved.  Elimination runs over the nodes of `a` in ascending
// label order; the result does not depend on that order.
EdgeMatrix partial_closure(const EdgeMatrix &m, const NodeSet &a);

// zer_N of a unit upper-triangular matrix: the transitive closure, computed
// by boolean reachability.  Throws NotTriangular.
EdgeMatrix ancestor_closure(const EdgeMatrix &a);

// zer_N of a symmetric matrix: completes every connected component, via
// union-find.  Throws NotSymmetric.
EdgeMatrix component_closure(const EdgeMatrix &w);

// Overall covariance and concentration graphs induced by a parent graph:
// In[A- (A-)^T] and In[A^T A].
struct OverallInduced {
  EdgeMatrix covariance;
  EdgeMatrix concentration;
};
OverallInduced induced_overall(const EdgeMatrix &a);

// Edge matrices of a regression graph in generation order: H holds arrows
// and context full lines, W holds dashed lines with an identity context
// block; `context` records which nodes form the last block.
struct RegressionEdgeMatrices {
  EdgeMatrix h;
  EdgeMatrix w;
  NodeSet context;
};
RegressionEdgeMatrices regression_edge_matrices(const RegressionGraph &g);

// Edge matrix A of a parent graph (unit upper-triangular in generation
// order).  Throws InvalidGraph when g is not a parent graph.
EdgeMatrix parent_edge_matrix(const RegressionGraph &g);

// Induced edge-matrix components for marginalising over `a` and
// conditioning on b = N \ a:
//   cov_aa    dashed edges among a given b        (zeros of Sigma_aa|b)
//   arrows_ab arrows from b to a                  (zeros of Pi_a|b)
//   con_bb    full lines among b after losing a   (zeros of Sigma^bb.a)
struct InducedEdgeSet {
  NodeSet margin;     // a
  NodeSet condition;  // b
  EdgeMatrix cov_aa;
  EdgeMatrix arrows_ab;
  EdgeMatrix con_bb;
};

InducedEdgeSet induced_regression(const RegressionEdgeMatrices &em,
                                  const NodeSet &a);
InducedEdgeSet induced_regression(const RegressionGraph &g, const NodeSet &a);

// Partial closure commutes with taking submatrices: checks
// [zer_a M]_{keep,keep} == zer_a [M_{keep,keep}] for a subset of keep.
bool submatrix_exchange_check(const EdgeMatrix &m, const NodeSet &a,
                              const NodeSet &keep);

}  // namespace regraph
