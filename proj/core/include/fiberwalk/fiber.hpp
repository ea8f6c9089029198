#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fiberwalk/digraph.hpp"
#include "fiberwalk/sampler.hpp"

namespace fiberwalk {

// Exhaustively enumerated observable fiber: every simple directed graph with
// the given sufficient statistics, in canonical (sorted edge list) order.
struct Fiber {
    SufficientStats stats;
    int node_count = 0;
    std::vector<DirectedGraph> elements;

    std::size_t size() const { return elements.size(); }
    bool contains(const GraphKey& key) const;
    // Index in elements, or -1.
    long long index_of(const GraphKey& key) const;
};

// Depth-first search over dyad states with pruning on residual degrees.
// Throws TooLarge when the graph has more than max_dyads dyads.
Fiber enumerate_fiber(const DirectedGraph& g, int max_dyads = 45);

// All simple undirected graphs realizing the degree sequence, returned as
// all-mutual directed graphs. Throws TooLarge past max_nodes and Infeasible
// when no realization exists.
Fiber enumerate_undirected_fiber(std::span<const int> degrees, int max_nodes = 10);

struct Coverage {
    std::uint64_t visited = 0;
    std::uint64_t missing = 0;
};

// Compares the chain's visited states against the enumerated fiber. Every
// visited state must belong to the fiber; otherwise OracleViolation.
Coverage coverage(const ChainResult& result, const Fiber& fiber);

} // namespace fiberwalk
