#include "regraph/binary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace regraph {

namespace {

constexpr double kProbSlack = 1e-12;

std::string level_string(const std::vector<int> &levels) {
  std::ostringstream os;
  for (size_t i = 0; i < levels.size(); ++i) {
    if (i) os << ",";
    os << "x" << (i + 1) << "=" << (levels[i] > 0 ? "+1" : "-1");
  }
  return os.str();
}

// Blocks in generation order with the context appended last.
std::vector<NodeSet> all_blocks(const RegressionGraph &g) {
  std::vector<NodeSet> blocks = g.blocks().response_blocks;
  blocks.push_back(g.blocks().context);
  return blocks;
}

void check_model_shape(const SymBinaryModel &model) {
  const RegressionGraph &g = model.graph;
  require_valid(g);
  int d = g.dim();
  if (d > 20)
    throw std::invalid_argument("symmetric binary model: dimension too large");
  for (int i = 0; i < d; ++i)
    if (g.nodes()[i] != i + 1)
      throw std::invalid_argument(
          "symmetric binary model: node labels must be 1..d");
  for (const NodeSet &blk : g.blocks().response_blocks)
    if (blk.size() > 2)
      throw InvalidGraph(
          "symmetric binary model: response blocks of size > 2 are not "
          "supported");
  for (const Edge &e : g.edges())
    if (e.kind == EdgeKind::FullLine)
      throw InvalidGraph(
          "symmetric binary model: context edges are not supported");
  // Coefficients may only sit on edges of the graph.
  for (const auto &[key, value] : model.eta) {
    auto [i, j] = key;
    if (value == 0.0) continue;
    auto e = g.edge_between(i, j);
    if (!e || e->i != i)
      throw InvalidGraph("symmetric binary model: coefficient (" +
                         std::to_string(i) + "," + std::to_string(j) +
                         ") has no matching edge");
  }
}

}  // namespace

double SymBinaryModel::eta_at(NodeId i, NodeId j) const {
  auto it = eta.find({i, j});
  return it == eta.end() ? 0.0 : it->second;
}

std::vector<int> JointTable::levels_of(std::size_t index) const {
  std::vector<int> levels(dim);
  for (int i = 0; i < dim; ++i)
    levels[i] = (index >> i) & 1 ? -1 : +1;
  return levels;
}

std::size_t JointTable::index_of(const std::vector<int> &levels) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim; ++i)
    if (levels[i] < 0) idx |= std::size_t{1} << i;
  return idx;
}

JointTable build_table(const SymBinaryModel &model) {
  check_model_shape(model);
  const RegressionGraph &g = model.graph;
  int d = g.dim();
  std::vector<NodeSet> blocks = all_blocks(g);

  JointTable table;
  table.dim = d;
  table.order = g.nodes();
  table.probs.assign(std::size_t{1} << d, 0.0);

  // Precompute each node's past in the generation order.
  std::vector<NodeSet> past_of_block(blocks.size());
  {
    NodeSet past;
    for (int k = (int)blocks.size() - 1; k >= 0; --k) {
      past_of_block[k] = past;
      past = set_union(past, blocks[k]);
    }
  }

  for (std::size_t idx = 0; idx < table.probs.size(); ++idx) {
    std::vector<int> x = table.levels_of(idx);
    auto level = [&](NodeId v) { return (double)x[v - 1]; };
    double p = 1.0;
    for (size_t k = 0; k < blocks.size(); ++k) {
      const NodeSet &blk = blocks[k];
      if (blk.empty()) continue;
      auto mean = [&](NodeId i) {
        double mu = 0.0;
        for (NodeId j : past_of_block[k]) mu += model.eta_at(i, j) * level(j);
        return mu;
      };
      double f;
      if (blk.size() == 1) {
        NodeId i = blk[0];
        f = 0.5 * (1.0 + level(i) * mean(i));
      } else if (blk.size() == 2) {
        NodeId i = blk[0], j = blk[1];
        double mi = mean(i), mj = mean(j);
        double cov = model.eta_at(i, j);
        f = 0.25 * (1.0 + mi * level(i) + mj * level(j) +
                    (cov + mi * mj) * level(i) * level(j));
      } else {
        // Context block: uniform by construction (no edges allowed).
        f = std::pow(0.5, (double)blk.size());
      }
      if (f < -kProbSlack || f > 1.0 + kProbSlack)
        throw InvalidProbability(
            "conditional probability " + std::to_string(f) +
            " out of range for block starting at node " +
            std::to_string(blk[0]) + " under levels " + level_string(x));
      p *= std::max(f, 0.0);
    }
    table.probs[idx] = p;
  }
  return table;
}

double correlation(const JointTable &table, NodeId i, NodeId j) {
  if (!set_contains(table.order, i) || !set_contains(table.order, j))
    throw UnknownNode("correlation: node not in table");
  return moment(table, make_node_set({i, j}));
}

double moment(const JointTable &table, const NodeSet &s) {
  for (NodeId v : s)
    if (!set_contains(table.order, v))
      throw UnknownNode("moment: node not in table");
  std::size_t mask = 0;
  for (NodeId v : s) mask |= std::size_t{1} << (v - 1);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < table.probs.size(); ++idx) {
    int parity = __builtin_popcountll(idx & mask) & 1;
    acc += parity ? -table.probs[idx] : table.probs[idx];
  }
  return acc;
}

RealMatrix sigma_from_eta(const SymBinaryModel &model) {
  check_model_shape(model);
  const RegressionGraph &g = model.graph;
  int d = g.dim();
  std::vector<NodeSet> blocks = all_blocks(g);
  RealMatrix sigma = RealMatrix::Zero(d, d);
  // Processed tail of the generation order, as labels.
  std::vector<NodeId> tail;
  for (int k = (int)blocks.size() - 1; k >= 0; --k) {
    const NodeSet &blk = blocks[k];
    if (blk.empty()) continue;
    int nb = (int)blk.size(), nt = (int)tail.size();
    RealMatrix b(nb, nt);
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < nt; ++c) b(r, c) = model.eta_at(blk[r], tail[c]);
    RealMatrix s_tt(nt, nt);
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < nt; ++c)
        s_tt(r, c) = sigma(tail[r] - 1, tail[c] - 1);
    RealMatrix s_bt = b * s_tt;
    RealMatrix s_bb = s_bt * b.transpose();
    for (int r = 0; r < nb; ++r) {
      for (int c = 0; c < nt; ++c) {
        sigma(blk[r] - 1, tail[c] - 1) = s_bt(r, c);
        sigma(tail[c] - 1, blk[r] - 1) = s_bt(r, c);
      }
      sigma(blk[r] - 1, blk[r] - 1) = 1.0;
      for (int c = r + 1; c < nb; ++c) {
        double v = s_bb(r, c) + model.eta_at(blk[r], blk[c]);
        sigma(blk[r] - 1, blk[c] - 1) = v;
        sigma(blk[c] - 1, blk[r] - 1) = v;
      }
    }
    for (NodeId v : blk) tail.push_back(v);
  }
  return sigma;
}

SymBinaryModel eta_from_sigma(const RealMatrix &sigma,
                              const RegressionGraph &g) {
  require_valid(g);
  if (!g.is_parent_graph())
    throw InvalidGraph("eta_from_sigma: graph must be a parent graph");
  int d = g.dim();
  if (sigma.rows() != d || sigma.cols() != d)
    throw DimensionMismatch("eta_from_sigma: Sigma size does not match");
  for (int i = 0; i < d; ++i) {
    if (std::abs(sigma(i, i) - 1.0) > 1e-9)
      throw std::invalid_argument("eta_from_sigma: Sigma must have unit "
                                  "diagonal");
  }
  const std::vector<NodeId> &order = g.order();
  SymBinaryModel model;
  model.graph = g;
  for (int t = 0; t + 1 < d; ++t) {
    NodeId i = order[t];
    std::vector<NodeId> past(order.begin() + t + 1, order.end());
    int np = (int)past.size();
    RealMatrix s_pp(np, np);
    Eigen::VectorXd s_ip(np);
    for (int r = 0; r < np; ++r) {
      s_ip(r) = sigma(i - 1, past[r] - 1);
      for (int c = 0; c < np; ++c)
        s_pp(r, c) = sigma(past[r] - 1, past[c] - 1);
    }
    Eigen::LLT<RealMatrix> llt(s_pp);
    if (llt.info() != Eigen::Success)
      throw SingularBlock("eta_from_sigma: past block of node " +
                          std::to_string(i) + " is not positive definite");
    Eigen::VectorXd beta = llt.solve(s_ip);
    for (int r = 0; r < np; ++r) {
      NodeId j = past[r];
      auto e = g.edge_between(i, j);
      bool arrow = e && e->kind == EdgeKind::Arrow && e->i == i;
      if (arrow) {
        model.eta[{i, j}] = beta(r);
      } else if (std::abs(beta(r)) > 1e-10) {
        throw NotRealizable("eta_from_sigma: Sigma needs coefficient (" +
                            std::to_string(i) + "," + std::to_string(j) +
                            ") = " + std::to_string(beta(r)) +
                            " at a missing edge");
      }
    }
  }
  // The coefficients must also stay inside the probability simplex.
  try {
    build_table(model);
  } catch (const InvalidProbability &e) {
    throw NotRealizable(std::string("eta_from_sigma: ") + e.what());
  }
  return model;
}

bool independence_in_table(const JointTable &table, const IndepQuery &q,
                           double tol) {
  if (q.alpha.empty() || q.beta.empty())
    throw InvalidPartition("query: alpha and beta must be nonempty");
  if (!set_disjoint(q.alpha, q.beta) || !set_disjoint(q.alpha, q.given) ||
      !set_disjoint(q.beta, q.given))
    throw InvalidPartition("query: sets must be disjoint");
  for (const NodeSet *s : {&q.alpha, &q.beta, &q.given})
    for (NodeId v : *s)
      if (!set_contains(table.order, v))
        throw InvalidPartition("query: unknown node " + std::to_string(v));

  int na = (int)q.alpha.size(), nb = (int)q.beta.size(),
      nc = (int)q.given.size();
  std::size_t sa = std::size_t{1} << na, sb = std::size_t{1} << nb,
              sc = std::size_t{1} << nc;
  std::vector<double> joint(sa * sb * sc, 0.0);
  for (std::size_t idx = 0; idx < table.probs.size(); ++idx) {
    std::size_t ia = 0, ib = 0, ic = 0;
    for (int t = 0; t < na; ++t)
      ia |= ((idx >> (q.alpha[t] - 1)) & 1) << t;
    for (int t = 0; t < nb; ++t)
      ib |= ((idx >> (q.beta[t] - 1)) & 1) << t;
    for (int t = 0; t < nc; ++t)
      ic |= ((idx >> (q.given[t] - 1)) & 1) << t;
    joint[(ic * sb + ib) * sa + ia] += table.probs[idx];
  }
  for (std::size_t ic = 0; ic < sc; ++ic) {
    double pc = 0.0;
    std::vector<double> pa(sa, 0.0), pb(sb, 0.0);
    for (std::size_t ib = 0; ib < sb; ++ib)
      for (std::size_t ia = 0; ia < sa; ++ia) {
        double v = joint[(ic * sb + ib) * sa + ia];
        pc += v;
        pa[ia] += v;
        pb[ib] += v;
      }
    if (pc < 1e-14) continue;
    for (std::size_t ib = 0; ib < sb; ++ib)
      for (std::size_t ia = 0; ia < sa; ++ia) {
        double lhs = joint[(ic * sb + ib) * sa + ia] / pc;
        double rhs = (pa[ia] / pc) * (pb[ib] / pc);
        if (std::abs(lhs - rhs) > tol) return false;
      }
  }
  return true;
}

}  // namespace regraph
