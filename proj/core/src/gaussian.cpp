#include "regraph/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace regraph {

namespace {

std::vector<int> complement_positions(int n, const std::vector<int> &a) {
  std::vector<bool> in_a(n, false);
  for (int p : a) in_a[p] = true;
  std::vector<int> b;
  for (int p = 0; p < n; ++p)
    if (!in_a[p]) b.push_back(p);
  return b;
}

RealMatrix pick(const RealMatrix &m, const std::vector<int> &rows,
                const std::vector<int> &cols) {
  RealMatrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

}  // namespace

RegressionSystem sample_system(const RegressionGraph &g, std::uint64_t seed) {
  require_valid(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.2, 0.9);
  std::bernoulli_distribution flip(0.5);
  auto draw = [&] {
    double v = mag(rng);
    return flip(rng) ? -v : v;
  };

  const std::vector<NodeId> &order = g.order();
  int d = (int)order.size();
  std::vector<int> pos(d);
  auto position = [&](NodeId v) {
    return (int)(std::find(order.begin(), order.end(), v) - order.begin());
  };

  RealMatrix h = RealMatrix::Identity(d, d);
  RealMatrix w = RealMatrix::Identity(d, d);
  // Iterate edges in canonical order so that draws are reproducible.
  for (const Edge &e : g.edges()) {
    int pi = position(e.i);
    int pj = position(e.j);
    switch (e.kind) {
      case EdgeKind::Arrow:
        h(pi, pj) = -draw();
        break;
      case EdgeKind::FullLine: {
        double v = draw();
        h(pi, pj) = v;
        h(pj, pi) = v;
        break;
      }
      case EdgeKind::DashedLine: {
        double v = draw();
        w(pi, pj) = v;
        w(pj, pi) = v;
        break;
      }
    }
  }
  // Diagonal loading keeps the symmetric blocks strictly diagonally
  // dominant, hence positive definite, without touching edge parameters.
  auto load_block = [](RealMatrix &m, const std::vector<int> &idx) {
    for (int i : idx) {
      double s = 0;
      for (int j : idx)
        if (j != i) s += std::abs(m(i, j));
      m(i, i) = std::max(1.0, s + 0.1);
    }
  };
  std::vector<int> ctx;
  for (NodeId v : g.blocks().context) ctx.push_back(position(v));
  load_block(h, ctx);
  for (const NodeSet &blk : g.blocks().response_blocks) {
    std::vector<int> idx;
    for (NodeId v : blk) idx.push_back(position(v));
    load_block(w, idx);
  }
  // The context block of W repeats the context concentration matrix.
  for (int i : ctx)
    for (int j : ctx) w(i, j) = h(i, j);
  return {order, std::move(h), std::move(w)};
}

CovariancePair covariance_from_triangular(const TriangularSystem &ts) {
  const RealMatrix &a = ts.coeff;
  int d = (int)a.rows();
  if (a.cols() != d || ts.residual_var.size() != d)
    throw DimensionMismatch("covariance_from_triangular: shapes differ");
  for (int i = 0; i < d; ++i) {
    if (a(i, i) != 1.0)
      throw std::invalid_argument("triangular system: diagonal must be 1");
    if (ts.residual_var(i) <= 0.0)
      throw std::invalid_argument("triangular system: variances must be > 0");
    for (int j = 0; j < i; ++j)
      if (a(i, j) != 0.0)
        throw std::invalid_argument("triangular system: not upper-triangular");
  }
  RealMatrix ainv = a.triangularView<Eigen::Upper>().solve(
      RealMatrix::Identity(d, d));
  if (!ainv.allFinite())
    throw SingularMatrix("covariance_from_triangular: singular coefficients");
  CovariancePair cp;
  cp.sigma = ainv * ts.residual_var.asDiagonal() * ainv.transpose();
  cp.sigma_inv =
      a.transpose() * ts.residual_var.cwiseInverse().asDiagonal() * a;
  return cp;
}

CovariancePair system_covariance(const RegressionSystem &rs) {
  int d = (int)rs.h.rows();
  Eigen::PartialPivLU<RealMatrix> lu(rs.h);
  RealMatrix hinv_w = lu.solve(rs.w);
  CovariancePair cp;
  cp.sigma = lu.solve(hinv_w.transpose()).transpose();
  cp.sigma = 0.5 * (cp.sigma + cp.sigma.transpose().eval());
  cp.sigma_inv = rs.h.transpose() * rs.w.llt().solve(rs.h);
  cp.sigma_inv = 0.5 * (cp.sigma_inv + cp.sigma_inv.transpose().eval());
  if (!cp.sigma.allFinite() || !cp.sigma_inv.allFinite())
    throw SingularMatrix("system_covariance: system is singular");
  (void)d;
  return cp;
}

RealMatrix partial_inversion(const RealMatrix &m, const std::vector<int> &a) {
  int d = (int)m.rows();
  if (m.cols() != d)
    throw DimensionMismatch("partial_inversion: matrix must be square");
  RealMatrix out = m;
  for (int k : a) {
    if (k < 0 || k >= d)
      throw UnknownNode("partial_inversion: position out of range");
    double s = out(k, k);
    if (std::abs(s) < 1e-12)
      throw SingularPivot("partial_inversion: pivot " + std::to_string(k) +
                          " is numerically zero");
    for (int i = 0; i < d; ++i) {
      if (i == k) continue;
      double w = out(i, k);
      if (w == 0.0) continue;
      double f = w / s;
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        out(i, j) -= f * out(k, j);
      }
    }
    for (int i = 0; i < d; ++i) {
      if (i != k) out(i, k) /= s;
    }
    for (int j = 0; j < d; ++j) {
      if (j != k) out(k, j) = -out(k, j) / s;
    }
    out(k, k) = 1.0 / s;
  }
  return out;
}

JointResponseParams joint_response_params(const CovariancePair &cp,
                                          const std::vector<int> &a) {
  int d = (int)cp.sigma.rows();
  for (int p : a)
    if (p < 0 || p >= d)
      throw UnknownNode("joint_response_params: position out of range");
  std::vector<int> b = complement_positions(d, a);

  JointResponseParams out;
  out.a = a;
  out.b = b;
  RealMatrix s_bb = pick(cp.sigma, b, b);
  Eigen::LLT<RealMatrix> llt(s_bb);
  if (llt.info() != Eigen::Success)
    throw SingularBlock("joint_response_params: Sigma_bb is not positive "
                        "definite");
  RealMatrix s_ab = pick(cp.sigma, a, b);
  out.pi_ab = llt.solve(s_ab.transpose()).transpose();
  out.sigma_aa_given_b =
      pick(cp.sigma, a, a) - out.pi_ab * s_ab.transpose();
  out.con_bb = llt.solve(RealMatrix::Identity((int)b.size(), (int)b.size()));
  return out;
}

double induced_correlations_3node(double rho12, double rho13, double rho23,
                                  ThreeNodeConstraint constraint) {
  auto in_range = [](double r) { return r > -1.0 && r < 1.0; };
  switch (constraint) {
    case ThreeNodeConstraint::MarginalIndep23: {
      if (!in_range(rho12) || !in_range(rho13))
        throw std::invalid_argument("correlations must lie in (-1, 1)");
      // Sigma = [[1, r12, r13], [., 1, 0], [., ., 1]] must stay positive
      // definite: det = 1 - r12^2 - r13^2.
      if (1.0 - rho12 * rho12 - rho13 * rho13 <= 0.0)
        throw NotPositiveDefinite(
            "2 _||_ 3 with these correlations admits no inverse covariance");
      return -rho12 * rho13 /
             std::sqrt((1.0 - rho12 * rho12) * (1.0 - rho13 * rho13));
    }
    case ThreeNodeConstraint::CondIndep13Given2: {
      if (!in_range(rho12) || !in_range(rho23))
        throw std::invalid_argument("correlations must lie in (-1, 1)");
      (void)rho13;  // determined by the constraint
      return rho12 * rho23;
    }
  }
  throw std::invalid_argument("unknown constraint");
}

std::string AuditFinding::to_string() const {
  std::ostringstream os;
  const char *name = matrix == 'S'   ? "Sigma_aa|b"
                     : matrix == 'P' ? "Pi_a|b"
                                     : "Sigma^bb.a";
  os << (zero_violated ? "structural zero violated" : "one never witnessed")
     << " in " << name << " at (" << row << "," << col << "), max |value| "
     << max_abs;
  return os.str();
}

std::string AuditReport::summary() const {
  std::ostringstream os;
  os << "audit over " << systems_used << " systems, tol " << tolerance << ": ";
  if (passed()) {
    os << "pass";
  } else {
    os << zero_violations.size() << " zero violation(s), "
       << unwitnessed_ones.size() << " unwitnessed one(s)";
    for (const auto &f : zero_violations) os << "\n  " << f.to_string();
    for (const auto &f : unwitnessed_ones) os << "\n  " << f.to_string();
  }
  return os.str();
}

AuditReport audit_systems(const RegressionGraph &g, const NodeSet &a,
                          const std::vector<RegressionSystem> &systems,
                          double tol) {
  require_valid(g);
  InducedEdgeSet ind = induced_regression(g, a);
  const std::vector<NodeId> &order = g.order();
  std::vector<int> pa, pb;
  auto position = [&](NodeId v) {
    return (int)(std::find(order.begin(), order.end(), v) - order.begin());
  };
  for (NodeId v : ind.margin) pa.push_back(position(v));
  for (NodeId v : ind.condition) pb.push_back(position(v));

  int na = (int)pa.size(), nb = (int)pb.size();
  RealMatrix max_s = RealMatrix::Zero(na, na);
  RealMatrix max_p = RealMatrix::Zero(na, nb);
  RealMatrix max_c = RealMatrix::Zero(nb, nb);
  for (const RegressionSystem &sys : systems) {
    CovariancePair cp = system_covariance(sys);
    JointResponseParams jp = joint_response_params(cp, pa);
    max_s = max_s.cwiseMax(jp.sigma_aa_given_b.cwiseAbs());
    max_p = max_p.cwiseMax(jp.pi_ab.cwiseAbs());
    max_c = max_c.cwiseMax(jp.con_bb.cwiseAbs());
  }

  AuditReport rep;
  rep.margin = ind.margin;
  rep.condition = ind.condition;
  rep.systems_used = (int)systems.size();
  rep.tolerance = tol;
  auto check = [&](char name, const EdgeMatrix &em, const RealMatrix &mx,
                   const NodeSet &rows, const NodeSet &cols) {
    for (int i = 0; i < (int)rows.size(); ++i) {
      for (int j = 0; j < (int)cols.size(); ++j) {
        bool one = em.at(i, j);
        double v = mx(i, j);
        if (!one && v >= tol)
          rep.zero_violations.push_back({name, rows[i], cols[j], true, v});
        if (one && v < tol)
          rep.unwitnessed_ones.push_back({name, rows[i], cols[j], false, v});
      }
    }
  };
  check('S', ind.cov_aa, max_s, ind.margin, ind.margin);
  check('P', ind.arrows_ab, max_p, ind.margin, ind.condition);
  check('C', ind.con_bb, max_c, ind.condition, ind.condition);
  return rep;
}

AuditReport structural_zero_audit(const RegressionGraph &g, const NodeSet &a,
                                  const std::vector<std::uint64_t> &seeds,
                                  double tol) {
  std::vector<RegressionSystem> systems;
  systems.reserve(seeds.size());
  for (std::uint64_t s : seeds) systems.push_back(sample_system(g, s));
  return audit_systems(g, a, systems, tol);
}

}  // namespace regraph
