#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regraph/edge_matrix.hpp"
#include "regraph/graph.hpp"
#include "regraph/independence.hpp"

namespace regraph::oracle {

// Test-support checkers.  Everything here is deliberately naive and capped
// at small dimensions; the point is semantic independence from the engine,
// not speed.

enum class PathRole { Collision, Transmitting };

enum class PathDisposition {
  Active,
  BlockedCollisionInM,
  BlockedTransmittingInC,
};

struct PathWitness {
  std::vector<NodeId> nodes;
  std::vector<PathRole> roles;  // one per inner node
  PathDisposition disposition = PathDisposition::Active;
  NodeId blocking_node = 0;  // set when blocked
  std::string to_string() const;
};

// All simple i-j paths of the graph with at most max_len edges, with the
// inner-node roles annotated.  Dispositions are left Active; they depend
// on a query.
std::vector<PathWitness> enumerate_paths(const RegressionGraph &g, NodeId i,
                                         NodeId j, int max_len);

// Literal path criterion on the a-line anterior graph with a = alpha u m:
// separated iff every path is blocked by a collision node in m or a
// transmitting node in c.  The anterior graph is rebuilt here from the
// path definition, not from partial closure.
bool separated_by_paths(const RegressionGraph &g, const IndepQuery &q);

// As above but also returns an active path when one exists.
std::optional<PathWitness> active_path(const RegressionGraph &g,
                                       const IndepQuery &q);

// Reference semantics of zer_a: an ij-one iff M has it or an a-line path
// of M-steps joins i to j.  Must coincide with partial_closure on every
// input.
EdgeMatrix closure_by_paths(const EdgeMatrix &m, const NodeSet &a);

}  // namespace regraph::oracle
