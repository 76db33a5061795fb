#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "regraph/graph.hpp"
#include "regraph/independence.hpp"

namespace regraph::testsupport {

// One assignable edge slot of a block structure, with its forced kind.
struct EdgeSlot {
  NodeId i;
  NodeId j;
  EdgeKind kind;
};

// All consecutive-block structures on nodes 1..d: every composition of d
// into response segments, optionally turning the last segment into the
// context set.
std::vector<BlockStructure> all_block_structures(int d);

std::vector<EdgeSlot> edge_slots(const BlockStructure &blocks);

RegressionGraph graph_from_mask(const BlockStructure &blocks,
                                const std::vector<EdgeSlot> &slots,
                                std::uint64_t mask);

// All valid queries on 1..d encoded as base-4 digit strings:
// digit 0 = alpha, 1 = beta, 2 = conditioned, 3 = marginalised.
std::vector<IndepQuery> all_queries(int d);

// Code of a query in the same base-4 encoding (for cross-lookups).
int query_code(int d, const IndepQuery &q);

// Deterministic random graph: random consecutive blocks, optional
// context, each edge slot filled with probability `density`.
RegressionGraph random_graph(int d, std::uint64_t seed, double density);

// Random relabeling of a graph's nodes; blocks keep their order but the
// labels are permuted (exercises label handling off the canonical 1..d
// generation order).
RegressionGraph permute_labels(const RegressionGraph &g, std::uint64_t seed);

struct IndepQueryLite {
  NodeSet alpha, beta, given;
};

IndepQuery random_query(int d, std::mt19937_64 &rng);

}  // namespace regraph::testsupport
