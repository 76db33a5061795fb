#include "regraph/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace regraph::oracle {

namespace {

constexpr int kMaxOracleDim = 10;

void check_dim(const RegressionGraph &g, const char *what) {
  if (g.dim() > kMaxOracleDim)
    throw std::invalid_argument(std::string(what) +
                                ": oracle is capped at dimension 10");
}

enum class End { None, Head, Tail, Dash, Full };

bool head_like(End e) { return e == End::Head || e == End::Dash; }

// Dense mixed-graph view; ends[x][y] is the edge end at x of the edge
// between x and y.
struct MixedView {
  std::vector<NodeId> nodes;
  std::vector<std::vector<End>> ends;

  int pos(NodeId v) const {
    auto it = std::find(nodes.begin(), nodes.end(), v);
    if (it == nodes.end())
      throw UnknownNode("oracle: unknown node " + std::to_string(v));
    return (int)(it - nodes.begin());
  }
  bool coupled(int x, int y) const { return ends[x][y] != End::None; }
};

MixedView base_view(const RegressionGraph &g) {
  MixedView v;
  v.nodes = g.nodes();
  int d = (int)v.nodes.size();
  v.ends.assign(d, std::vector<End>(d, End::None));
  for (const Edge &e : g.edges()) {
    int pi = v.pos(e.i), pj = v.pos(e.j);
    switch (e.kind) {
      case EdgeKind::Arrow:
        v.ends[pi][pj] = End::Head;
        v.ends[pj][pi] = End::Tail;
        break;
      case EdgeKind::DashedLine:
        v.ends[pi][pj] = v.ends[pj][pi] = End::Dash;
        break;
      case EdgeKind::FullLine:
        v.ends[pi][pj] = v.ends[pj][pi] = End::Full;
        break;
    }
  }
  return v;
}

// Anterior graph by the path definition: walk parent steps through
// responses, then full-line steps inside the context, continuing only
// through nodes of `a`.
MixedView anterior_view(const RegressionGraph &g, const NodeSet &a) {
  MixedView v;
  v.nodes = g.nodes();
  int d = (int)v.nodes.size();
  v.ends.assign(d, std::vector<End>(d, End::None));

  auto steps_from = [&](NodeId x) {
    NodeSet out;
    if (g.blocks().in_context(x)) {
      for (const Edge &e : g.edges())
        if (e.kind == EdgeKind::FullLine && (e.i == x || e.j == x))
          out.push_back(e.i == x ? e.j : e.i);
    } else {
      out = g.parents(x);
    }
    return make_node_set(std::move(out));
  };

  for (NodeId start : g.nodes()) {
    bool start_context = g.blocks().in_context(start);
    std::vector<bool> reached(d, false);
    std::deque<NodeId> queue;
    for (NodeId n : steps_from(start)) queue.push_back(n);
    while (!queue.empty()) {
      NodeId x = queue.front();
      queue.pop_front();
      if (x == start) continue;
      int px = v.pos(x);
      if (reached[px]) continue;
      reached[px] = true;
      if (set_contains(a, x))
        for (NodeId n : steps_from(x)) queue.push_back(n);
    }
    int ps = v.pos(start);
    for (int px = 0; px < d; ++px) {
      if (!reached[px]) continue;
      if (start_context) {
        // Context anteriors of context nodes are closed full lines.
        v.ends[ps][px] = v.ends[px][ps] = End::Full;
      } else {
        v.ends[ps][px] = End::Head;
        v.ends[px][ps] = End::Tail;
      }
    }
  }
  for (const Edge &e : g.edges()) {
    if (e.kind != EdgeKind::DashedLine) continue;
    int pi = v.pos(e.i), pj = v.pos(e.j);
    v.ends[pi][pj] = v.ends[pj][pi] = End::Dash;
  }
  return v;
}

PathRole role_at(const MixedView &v, int before, int inner, int after) {
  return head_like(v.ends[inner][before]) && head_like(v.ends[inner][after])
             ? PathRole::Collision
             : PathRole::Transmitting;
}

struct PathSearch {
  const MixedView &view;
  const NodeSet &cond;
  const NodeSet &marg;
  const std::vector<bool> &targets;
  std::vector<int> stack;
  std::vector<bool> on_stack;
  std::optional<PathWitness> found;

  // Depth-first over simple paths whose interior so far contains no
  // blocking node; any completion of such a prefix into a target is an
  // active path.
  void run(int from) {
    stack.push_back(from);
    on_stack[from] = true;
    explore();
    on_stack[from] = false;
    stack.pop_back();
  }

  void explore() {
    if (found) return;
    int cur = stack.back();
    for (int next = 0; next < (int)view.nodes.size(); ++next) {
      if (found) return;
      if (on_stack[next] || !view.coupled(cur, next)) continue;
      if (stack.size() >= 2) {
        int before = stack[stack.size() - 2];
        PathRole role = role_at(view, before, cur, next);
        NodeId label = view.nodes[cur];
        bool blocked =
            (role == PathRole::Collision && set_contains(marg, label)) ||
            (role == PathRole::Transmitting && set_contains(cond, label));
        if (blocked) continue;
      }
      if (targets[next]) {
        PathWitness w;
        for (int p : stack) w.nodes.push_back(view.nodes[p]);
        w.nodes.push_back(view.nodes[next]);
        for (size_t t = 1; t + 1 < w.nodes.size(); ++t)
          w.roles.push_back(role_at(view, view.pos(w.nodes[t - 1]),
                                    view.pos(w.nodes[t]),
                                    view.pos(w.nodes[t + 1])));
        w.disposition = PathDisposition::Active;
        found = std::move(w);
        return;
      }
      stack.push_back(next);
      on_stack[next] = true;
      explore();
      on_stack[next] = false;
      stack.pop_back();
    }
  }
};

}  // namespace

std::string PathWitness::to_string() const {
  std::ostringstream os;
  os << "path ";
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i) os << " - ";
    os << nodes[i];
    if (i > 0 && i + 1 < nodes.size())
      os << (roles[i - 1] == PathRole::Collision ? "[c]" : "[t]");
  }
  switch (disposition) {
    case PathDisposition::Active:
      os << " (active)";
      break;
    case PathDisposition::BlockedCollisionInM:
      os << " (blocked: collision node " << blocking_node
         << " is marginalised)";
      break;
    case PathDisposition::BlockedTransmittingInC:
      os << " (blocked: transmitting node " << blocking_node
         << " is conditioned on)";
      break;
  }
  return os.str();
}

std::vector<PathWitness> enumerate_paths(const RegressionGraph &g, NodeId i,
                                         NodeId j, int max_len) {
  require_valid(g);
  check_dim(g, "enumerate_paths");
  if (!g.has_node(i) || !g.has_node(j))
    throw UnknownNode("enumerate_paths: unknown endpoint");
  if (i == j) throw std::invalid_argument("enumerate_paths: i == j");
  MixedView view = base_view(g);
  int d = (int)view.nodes.size();
  std::vector<PathWitness> out;
  std::vector<int> stack{view.pos(i)};
  std::vector<bool> on_stack(d, false);
  on_stack[stack[0]] = true;
  int target = view.pos(j);

  auto emit = [&] {
    PathWitness w;
    for (int p : stack) w.nodes.push_back(view.nodes[p]);
    for (size_t t = 1; t + 1 < w.nodes.size(); ++t)
      w.roles.push_back(
          role_at(view, stack[t - 1], stack[t], stack[t + 1]));
    out.push_back(std::move(w));
  };

  std::function<void()> dfs = [&] {
    int cur = stack.back();
    if ((int)stack.size() - 1 >= max_len) return;
    for (int next = 0; next < d; ++next) {
      if (on_stack[next] || !view.coupled(cur, next)) continue;
      stack.push_back(next);
      on_stack[next] = true;
      if (next == target)
        emit();
      else
        dfs();
      on_stack[next] = false;
      stack.pop_back();
    }
  };
  dfs();
  std::sort(out.begin(), out.end(),
            [](const PathWitness &a, const PathWitness &b) {
              return std::make_pair(a.nodes.size(), a.nodes) <
                     std::make_pair(b.nodes.size(), b.nodes);
            });
  return out;
}

std::optional<PathWitness> active_path(const RegressionGraph &g,
                                       const IndepQuery &q) {
  require_valid(g);
  check_dim(g, "separated_by_paths");
  require_partition(g, q);
  NodeSet m = set_difference(
      set_difference(set_difference(g.nodes(), q.alpha), q.beta), q.given);
  NodeSet a = set_union(q.alpha, m);
  MixedView view = anterior_view(g, a);
  int d = (int)view.nodes.size();
  std::vector<bool> targets(d, false);
  for (NodeId b : q.beta) targets[view.pos(b)] = true;

  PathSearch search{view, q.given, m, targets, {}, std::vector<bool>(d, false),
                    std::nullopt};
  for (NodeId s : q.alpha) {
    search.run(view.pos(s));
    if (search.found) return search.found;
  }
  return std::nullopt;
}

bool separated_by_paths(const RegressionGraph &g, const IndepQuery &q) {
  return !active_path(g, q).has_value();
}

EdgeMatrix closure_by_paths(const EdgeMatrix &m, const NodeSet &a) {
  if (!m.square())
    throw DimensionMismatch("closure_by_paths: matrix must be square");
  for (NodeId v : a) (void)m.row_position(v);  // throws UnknownNode
  int d = m.rows();
  EdgeMatrix out = m;
  for (int i = 0; i < d; ++i) {
    std::vector<bool> reached(d, false);
    std::deque<int> queue;
    for (int j = 0; j < d; ++j)
      if (j != i && m.at(i, j)) queue.push_back(j);
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      if (reached[x]) continue;
      reached[x] = true;
      if (!set_contains(a, m.order()[x])) continue;
      for (int y = 0; y < d; ++y)
        if (m.at(x, y) && y != x && !reached[y]) queue.push_back(y);
    }
    for (int j = 0; j < d; ++j)
      if (reached[j]) out.set(i, j, true);
  }
  return out;
}

}  // namespace regraph::oracle
