#include "regraph/edge_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace regraph {

namespace {

std::vector<NodeId> default_order(int n) {
  std::vector<NodeId> o(n);
  std::iota(o.begin(), o.end(), 1);
  return o;
}

int find_position(const std::vector<NodeId> &order, NodeId v,
                  const char *what) {
  auto it = std::find(order.begin(), order.end(), v);
  if (it == order.end())
    throw UnknownNode(std::string(what) + ": unknown node " +
                      std::to_string(v));
  return (int)(it - order.begin());
}

std::vector<int> positions_of(const std::vector<NodeId> &order,
                              const NodeSet &s, const char *what) {
  std::vector<int> pos;
  pos.reserve(s.size());
  for (NodeId v : s) pos.push_back(find_position(order, v, what));
  return pos;
}

}  // namespace

EdgeMatrix::EdgeMatrix(std::vector<NodeId> row_order,
                       std::vector<NodeId> col_order)
    : rows_((int)row_order.size()),
      cols_((int)col_order.size()),
      stride_(((int)col_order.size() + 63) / 64),
      row_order_(std::move(row_order)),
      col_order_(std::move(col_order)),
      words_((size_t)rows_ * std::max(stride_, 1), 0) {
  if (stride_ == 0) stride_ = 1;
}

EdgeMatrix::EdgeMatrix(std::vector<NodeId> order)
    : EdgeMatrix(order, order) {}

EdgeMatrix EdgeMatrix::identity(std::vector<NodeId> order) {
  EdgeMatrix m(std::move(order));
  for (int i = 0; i < m.rows(); ++i) m.set(i, i, true);
  return m;
}

void EdgeMatrix::set(int r, int c, bool v) {
  std::uint64_t &w = words_[(size_t)r * stride_ + (size_t)(c >> 6)];
  std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (v)
    w |= bit;
  else
    w &= ~bit;
}

int EdgeMatrix::row_position(NodeId v) const {
  return find_position(row_order_, v, "edge matrix");
}

int EdgeMatrix::col_position(NodeId v) const {
  return find_position(col_order_, v, "edge matrix");
}

bool EdgeMatrix::has_unit_diagonal() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    if (!at(i, i)) return false;
  return true;
}

bool EdgeMatrix::is_symmetric() const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool EdgeMatrix::is_unit_upper_triangular() const {
  if (!square() || !has_unit_diagonal()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < i; ++j)
      if (at(i, j)) return false;
  return true;
}

int EdgeMatrix::count_ones() const {
  int n = 0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) n += at(i, j);
  return n;
}

std::vector<std::vector<int>> EdgeMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = at(i, j);
  return out;
}

bool operator==(const EdgeMatrix &a, const EdgeMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.row_order_ != b.row_order_ || a.col_order_ != b.col_order_)
    return false;
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

EdgeMatrix indicator(const std::vector<std::vector<long long>> &m) {
  return indicator(m, default_order((int)m.size()));
}

EdgeMatrix indicator(const std::vector<std::vector<long long>> &m,
                     std::vector<NodeId> order) {
  int n = (int)m.size();
  EdgeMatrix out(std::move(order));
  if (out.rows() != n)
    throw DimensionMismatch("indicator: order size does not match matrix");
  for (int i = 0; i < n; ++i) {
    if ((int)m[i].size() != n)
      throw DimensionMismatch("indicator: matrix is not square");
    for (int j = 0; j < n; ++j) {
      if (m[i][j] < 0)
        throw NegativeEntry("indicator: negative entry at (" +
                            std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
      if (m[i][j] > 0) out.set(i, j, true);
    }
  }
  return out;
}

EdgeMatrix bool_product(const EdgeMatrix &a, const EdgeMatrix &b) {
  if (a.cols() != b.rows() || a.col_order() != b.row_order())
    throw DimensionMismatch("bool_product: inner dimensions differ");
  EdgeMatrix out(a.row_order(), b.col_order());
  for (int i = 0; i < a.rows(); ++i) {
    std::uint64_t *dst = out.row_words(i);
    for (int k = 0; k < a.cols(); ++k) {
      if (!a.at(i, k)) continue;
      const std::uint64_t *src = b.row_words(k);
      for (int w = 0; w < out.stride(); ++w) dst[w] |= src[w];
    }
  }
  return out;
}

EdgeMatrix bool_sum(const EdgeMatrix &a, const EdgeMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      a.row_order() != b.row_order() || a.col_order() != b.col_order())
    throw DimensionMismatch("bool_sum: shapes differ");
  EdgeMatrix out = a;
  for (int i = 0; i < a.rows(); ++i) {
    std::uint64_t *dst = out.row_words(i);
    const std::uint64_t *src = b.row_words(i);
    for (int w = 0; w < out.stride(); ++w) dst[w] |= src[w];
  }
  return out;
}

EdgeMatrix transpose(const EdgeMatrix &m) {
  EdgeMatrix out(m.col_order(), m.row_order());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j)) out.set(j, i, true);
  return out;
}

EdgeMatrix submatrix(const EdgeMatrix &m, const std::vector<int> &row_pos,
                     const std::vector<int> &col_pos) {
  std::vector<NodeId> ro, co;
  for (int p : row_pos) ro.push_back(m.row_order()[p]);
  for (int p : col_pos) co.push_back(m.col_order()[p]);
  EdgeMatrix out(std::move(ro), std::move(co));
  for (size_t i = 0; i < row_pos.size(); ++i)
    for (size_t j = 0; j < col_pos.size(); ++j)
      if (m.at(row_pos[i], col_pos[j])) out.set((int)i, (int)j, true);
  return out;
}

EdgeMatrix partial_closure(const EdgeMatrix &m, const NodeSet &a) {
  if (!m.square())
    throw DimensionMismatch("partial_closure: matrix must be square");
  std::vector<int> pivots = positions_of(m.order(), a, "partial_closure");
  EdgeMatrix out = m;
  for (int k : pivots) {
    const std::uint64_t *pivot_row = out.row_words(k);
    // Copy so that row k itself stays fixed during this pass.
    std::vector<std::uint64_t> fixed(pivot_row, pivot_row + out.stride());
    for (int i = 0; i < out.rows(); ++i) {
      if (i == k || !out.at(i, k)) continue;
      std::uint64_t *dst = out.row_words(i);
      for (int w = 0; w < out.stride(); ++w) dst[w] |= fixed[w];
    }
  }
  return out;
}

EdgeMatrix ancestor_closure(const EdgeMatrix &a) {
  if (!a.is_unit_upper_triangular())
    throw NotTriangular("ancestor_closure: not unit upper-triangular");
  // Sweeping rows bottom-up makes each row the full reachability set of
  // its node in one pass.
  EdgeMatrix out = a;
  for (int i = out.rows() - 1; i >= 0; --i) {
    std::uint64_t *dst = out.row_words(i);
    for (int j = i + 1; j < out.cols(); ++j) {
      if (!out.at(i, j)) continue;
      const std::uint64_t *src = out.row_words(j);
      for (int w = 0; w < out.stride(); ++w) dst[w] |= src[w];
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

EdgeMatrix component_closure(const EdgeMatrix &w) {
  if (!w.is_symmetric())
    throw NotSymmetric("component_closure: matrix is not symmetric");
  int n = w.rows();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w.at(i, j)) uf.unite(i, j);
  EdgeMatrix out = w;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (uf.find(i) == uf.find(j)) out.set(i, j, true);
  return out;
}

OverallInduced induced_overall(const EdgeMatrix &a) {
  EdgeMatrix anc = ancestor_closure(a);  // throws NotTriangular
  return {bool_product(anc, transpose(anc)),
          bool_product(transpose(a), a)};
}

RegressionEdgeMatrices regression_edge_matrices(const RegressionGraph &g) {
  require_valid(g);
  std::vector<NodeId> order = g.order();
  EdgeMatrix h = EdgeMatrix::identity(order);
  EdgeMatrix w = EdgeMatrix::identity(order);
  for (const Edge &e : g.edges()) {
    int pi = h.row_position(e.i);
    int pj = h.row_position(e.j);
    switch (e.kind) {
      case EdgeKind::Arrow:
        h.set(pi, pj, true);
        break;
      case EdgeKind::FullLine:
        h.set(pi, pj, true);
        h.set(pj, pi, true);
        break;
      case EdgeKind::DashedLine:
        w.set(pi, pj, true);
        w.set(pj, pi, true);
        break;
    }
  }
  return {std::move(h), std::move(w), g.blocks().context};
}

EdgeMatrix parent_edge_matrix(const RegressionGraph &g) {
  require_valid(g);
  if (!g.is_parent_graph())
    throw InvalidGraph("parent_edge_matrix: not a parent graph");
  return regression_edge_matrices(g).h;
}

namespace {

// Edge-end classes for the alternating closure.  A node transmits a path
// unless both of its path-edge ends are arrowheads or dashed ends.
enum class PathEnd : unsigned char { Head, Tail, Dash, Full };

inline bool head_like(PathEnd e) {
  return e == PathEnd::Head || e == PathEnd::Dash;
}

struct DirectedStep {
  int to;
  PathEnd at_from;
  PathEnd at_to;
};

}  // namespace

InducedEdgeSet induced_regression(const RegressionEdgeMatrices &em,
                                  const NodeSet &a) {
  const EdgeMatrix &h = em.h;
  const EdgeMatrix &w = em.w;
  if (!h.square() || !w.square() || h.order() != w.order())
    throw DimensionMismatch("induced_regression: H and W orders differ");
  const std::vector<NodeId> &order = h.order();
  NodeSet all = make_node_set(order);
  if (!is_subset(a, all))
    throw InvalidSplit("induced_regression: margin set is not a subset of N");
  NodeSet b = set_difference(all, a);
  int d = (int)order.size();

  // The a-line anterior graph carries the closures of all transmitting Vs
  // over a; the remaining V types are closed below by the alternating
  // reachability, which needs no fixed product order.
  EdgeMatrix k = partial_closure(h, a);

  std::vector<bool> in_context(d), in_margin(d);
  for (int p = 0; p < d; ++p) {
    in_context[p] = set_contains(em.context, order[p]);
    in_margin[p] = set_contains(a, order[p]);
  }

  std::vector<std::vector<DirectedStep>> adj(d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      if (x == y) continue;
      if (k.at(x, y)) {
        if (in_context[x] && in_context[y]) {
          adj[x].push_back({y, PathEnd::Full, PathEnd::Full});
        } else {
          // x <- y: an anterior arrow pointing at x.
          adj[x].push_back({y, PathEnd::Head, PathEnd::Tail});
          adj[y].push_back({x, PathEnd::Tail, PathEnd::Head});
        }
      }
      if (x < y && w.at(x, y)) {
        adj[x].push_back({y, PathEnd::Dash, PathEnd::Dash});
        adj[y].push_back({x, PathEnd::Dash, PathEnd::Dash});
      }
    }
  }

  // Paths between node pairs are edge-inducing when every inner collision
  // node is conditioned on and every inner transmitting node is
  // marginalised over.  States double the nodes by whether the path
  // arrived on a head-like end.
  std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
  std::vector<signed char> state(2 * d);
  std::vector<int> queue;
  for (int s = 0; s < d; ++s) {
    std::fill(state.begin(), state.end(), 0);
    queue.clear();
    for (const DirectedStep &e : adj[s]) {
      int st = 2 * e.to + (head_like(e.at_to) ? 1 : 0);
      if (!state[st]) {
        state[st] = 1;
        queue.push_back(st);
      }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int cur = queue[qi];
      int y = cur / 2;
      bool arrived_head = cur & 1;
      reach[s][y] = true;
      for (const DirectedStep &e : adj[y]) {
        bool collision = arrived_head && head_like(e.at_from);
        if (collision ? in_margin[y] : !in_margin[y]) continue;
        int st = 2 * e.to + (head_like(e.at_to) ? 1 : 0);
        if (!state[st]) {
          state[st] = 1;
          queue.push_back(st);
        }
      }
    }
  }

  std::vector<int> pa, pb;
  for (NodeId n : a) pa.push_back(k.row_position(n));
  for (NodeId n : b) pb.push_back(k.row_position(n));

  InducedEdgeSet out;
  out.margin = a;
  out.condition = b;
  out.cov_aa = EdgeMatrix(a);
  out.arrows_ab = EdgeMatrix(a, b);
  out.con_bb = EdgeMatrix(b);
  for (size_t i = 0; i < pa.size(); ++i) {
    out.cov_aa.set((int)i, (int)i, true);
    for (size_t j = 0; j < pa.size(); ++j)
      if (reach[pa[i]][pa[j]]) out.cov_aa.set((int)i, (int)j, true);
    for (size_t j = 0; j < pb.size(); ++j)
      if (reach[pa[i]][pb[j]]) out.arrows_ab.set((int)i, (int)j, true);
  }
  for (size_t i = 0; i < pb.size(); ++i) {
    out.con_bb.set((int)i, (int)i, true);
    for (size_t j = 0; j < pb.size(); ++j)
      if (reach[pb[i]][pb[j]]) out.con_bb.set((int)i, (int)j, true);
  }
  return out;
}

InducedEdgeSet induced_regression(const RegressionGraph &g, const NodeSet &a) {
  return induced_regression(regression_edge_matrices(g), a);
}

bool submatrix_exchange_check(const EdgeMatrix &m, const NodeSet &a,
                              const NodeSet &keep) {
  if (!is_subset(a, keep))
    throw InvalidSplit("submatrix_exchange_check: a must be within keep");
  std::vector<int> pos = positions_of(m.order(), keep, "submatrix_exchange");
  EdgeMatrix closed_then_cut = submatrix(partial_closure(m, a), pos, pos);
  EdgeMatrix cut_then_closed = partial_closure(submatrix(m, pos, pos), a);
  return closed_then_cut == cut_then_closed;
}

}  // namespace regraph
