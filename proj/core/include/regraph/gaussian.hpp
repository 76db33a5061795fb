#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "regraph/edge_matrix.hpp"
#include "regraph/graph.hpp"

namespace regraph {

using RealMatrix = Eigen::MatrixXd;

// A X = eps with A unit upper-triangular and cov(eps) = diag(residual_var).
struct TriangularSystem {
  RealMatrix coeff;                // A
  Eigen::VectorXd residual_var;    // diagonal of Delta, all positive
};

// A covariance matrix together with its inverse (the concentration matrix).
struct CovariancePair {
  RealMatrix sigma;
  RealMatrix sigma_inv;
};

// Parameters of the joint linear regression of X_a on X_b.
struct JointResponseParams {
  std::vector<int> a;  // response positions
  std::vector<int> b;  // regressor positions
  RealMatrix pi_ab;              // Pi_a|b
  RealMatrix sigma_aa_given_b;   // residual covariance
  RealMatrix con_bb;             // concentration of the regressor block
};

// H X = eta with block-diagonal W = cov(eta): identity diagonal blocks and
// minus the regression coefficients in H's upper part, the context
// concentration matrix in the last block of both H and W.
struct RegressionSystem {
  std::vector<NodeId> order;  // generation order of the graph
  RealMatrix h;
  RealMatrix w;
};

// Random Gaussian parameters over a graph: coefficients at edges are drawn
// with magnitude in [0.2, 0.9] and random sign, missing edges are exact
// zeros, and symmetric blocks are made positive definite by diagonal
// loading.  Deterministic per seed.
RegressionSystem sample_system(const RegressionGraph &g, std::uint64_t seed);

// Sigma = A^{-1} Delta A^{-T} and Sigma^{-1} = A^T Delta^{-1} A.
CovariancePair covariance_from_triangular(const TriangularSystem &ts);

// Overall covariance pair Sigma = H^{-1} W H^{-T}, Sigma^{-1} = H^T W^{-1} H.
CovariancePair system_covariance(const RegressionSystem &rs);

// inv_a: exchanges argument and image on the rows/columns in `a`
// (0-based positions).  Self-inverse on the same set, commutative,
// exchangeable with submatrices; inv over all positions is the matrix
// inverse.  Throws SingularPivot when a pivot magnitude drops below 1e-12.
RealMatrix partial_inversion(const RealMatrix &m, const std::vector<int> &a);

// Pi_a|b, Sigma_aa|b and Sigma^bb.a from a covariance pair; positions in
// `a` are 0-based, b is the complement.
JointResponseParams joint_response_params(const CovariancePair &cp,
                                          const std::vector<int> &a);

// Three standardised variables with one independence imposed.
enum class ThreeNodeConstraint {
  MarginalIndep23,   // 2 _||_ 3; returns the induced partial correlation
                     // rho_23|1 from (rho12, rho13)
  CondIndep13Given2  // 1 _||_ 3 | 2; returns the induced marginal
                     // correlation rho_13 = rho12 * rho23
};

double induced_correlations_3node(double rho12, double rho13, double rho23,
                                  ThreeNodeConstraint constraint);

struct AuditFinding {
  char matrix = ' ';   // 'S' Sigma_aa|b, 'P' Pi_a|b, 'C' Sigma^bb.a
  NodeId row = 0;
  NodeId col = 0;
  bool zero_violated = false;  // true: structural zero exceeded tolerance
  double max_abs = 0.0;        // largest magnitude seen across systems
  std::string to_string() const;
};

struct AuditReport {
  NodeSet margin;
  NodeSet condition;
  int systems_used = 0;
  double tolerance = 0.0;
  std::vector<AuditFinding> zero_violations;
  std::vector<AuditFinding> unwitnessed_ones;
  bool passed() const {
    return zero_violations.empty() && unwitnessed_ones.empty();
  }
  std::string summary() const;
};

// Confirms that the zeros of the induced edge matrices are structural:
// every zero must stay below `tol` in all systems and every one must
// exceed `tol` in at least one system.
AuditReport structural_zero_audit(const RegressionGraph &g, const NodeSet &a,
                                  const std::vector<std::uint64_t> &seeds,
                                  double tol = 1e-9);

// Same audit against explicitly supplied parameter systems.
AuditReport audit_systems(const RegressionGraph &g, const NodeSet &a,
                          const std::vector<RegressionSystem> &systems,
                          double tol = 1e-9);

}  // namespace regraph
