#pragma once

#include <string>
#include <vector>

#include "regraph/binary.hpp"
#include "regraph/edge_matrix.hpp"
#include "regraph/gaussian.hpp"
#include "regraph/graph.hpp"
#include "regraph/independence.hpp"

namespace regraph::io {

// Graph text format (.rg):
//   nodes: 5
//   blocks: g1={1,2}; g2={3}; v={4,5}
//   arrow 1 < 3        # arrow points to 1
//   dashed 1 -- 2
//   full 4 - 5
// Comments run from '#' to the end of the line; whitespace is free.  The
// blocks line may omit v; a parent graph may use "blocks: singletons".
RegressionGraph parse_graph(const std::string &text);

// Canonical form of the same format; parse(emit(g)) == g.
std::string emit_graph(const RegressionGraph &g);

// Query syntax: "1,2 _||_ 5 | 3,4"; the conditioning part is optional.
IndepQuery parse_query(const std::string &text);
std::string emit_query(const IndepQuery &q);

// Deterministic DOT output; dashed edges use style=dashed, full lines are
// undirected plain edges, arrows are directed.
std::string emit_dot(const RegressionGraph &g);
std::string emit_dot(const InducedEdgeSet &ind);

// JSON forms.
std::string edge_matrix_to_json(const EdgeMatrix &m);
EdgeMatrix edge_matrix_from_json(const std::string &text);
std::string induced_to_json(const InducedEdgeSet &ind);
std::string real_matrix_to_json(const RealMatrix &m,
                                const std::vector<NodeId> &order);
std::pair<RealMatrix, std::vector<NodeId>> real_matrix_from_json(
    const std::string &text);
std::string table_to_json(const JointTable &t);
std::string table_to_csv(const JointTable &t);
std::string eta_to_json(const SymBinaryModel &m);
std::map<std::pair<NodeId, NodeId>, double> eta_from_json(
    const std::string &text);

// Aligned 0/1 grid for terminal output.
std::string edge_matrix_to_text(const EdgeMatrix &m);

}  // namespace regraph::io
