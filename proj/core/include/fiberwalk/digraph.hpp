#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace fiberwalk {

// Directed edge between 1-based node ids.
struct Edge {
    int from = 0;
    int to = 0;
    auto operator<=>(const Edge&) const = default;
};

// Unordered node pair with a < b.
struct NodePair {
    int a = 0;
    int b = 0;
    auto operator<=>(const NodePair&) const = default;
};

inline NodePair node_pair(int i, int j) { return i < j ? NodePair{i, j} : NodePair{j, i}; }

// State of the dyad {i, j}, i < j. Out means the edge i->j alone,
// In the edge j->i alone, Mutual both.
enum class DyadState : std::uint8_t { Null = 0, Out = 1, In = 2, Mutual = 3 };

// Simple directed graph on nodes 1..n. Immutable after construction.
class DirectedGraph {
public:
    DirectedGraph() = default;

    // Throws SelfLoop / DuplicateEdge / PreconditionViolation on invalid input.
    DirectedGraph(int n, std::vector<Edge> edges);

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    // Sorted edge list; the canonical form of the graph.
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int i, int j) const {
        return adj_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
                    static_cast<std::size_t>(j)] != 0;
    }

    // Requires i < j.
    DyadState dyad_state(int i, int j) const {
        int s = (has_edge(i, j) ? 1 : 0) | (has_edge(j, i) ? 2 : 0);
        return static_cast<DyadState>(s);
    }

    bool operator==(const DirectedGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> adj_;
};

// Out-degree, in-degree (both counting mutual edges) and number of mutual
// dyads per node; the conserved quantity of every move. Index 0 is node 1.
struct SufficientStats {
    std::vector<int> out_degree;
    std::vector<int> in_degree;
    std::vector<int> recip_degree;
    bool operator==(const SufficientStats&) const = default;
};

// Edges to delete and insert. Mutual pairs appear as both orientations.
// removed and added are kept disjoint and sorted.
struct Move {
    std::vector<Edge> removed;
    std::vector<Edge> added;
    bool trivial() const { return removed.empty() && added.empty(); }
    bool operator==(const Move&) const = default;
};

struct GraphParts {
    DirectedGraph reciprocated;   // edges whose reverse is also present
    DirectedGraph unreciprocated; // the rest
};

// Splits g into its reciprocated and unreciprocated parts (a partition).
GraphParts decompose(const DirectedGraph& g);

// Skeleton of g: the set of unordered pairs spanned by its edges.
std::vector<NodePair> undir(const DirectedGraph& g);
std::vector<NodePair> undir(std::span<const Edge> edges);

// Both orientations of every pair, sorted.
std::vector<Edge> recip(std::span<const NodePair> pairs);

SufficientStats suff_stats(const DirectedGraph& g);

// Applies the move and re-verifies that the sufficient statistics are
// unchanged. Throws PreconditionViolation if removed edges are absent or an
// added edge collides with a surviving edge; StatMismatch if the resulting
// statistics differ (a generator bug).
DirectedGraph apply_move(const DirectedGraph& g, const Move& m);

// Triangular index of the dyad {i, j}, i < j, among the C(n,2) dyads of an
// n-node graph, in lexicographic order.
inline int dyad_index(int n, int i, int j) {
    return (i - 1) * n - i * (i - 1) / 2 + (j - i - 1);
}

inline int dyad_count(int n) { return n * (n - 1) / 2; }

} // namespace fiberwalk
