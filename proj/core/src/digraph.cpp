#include "fiberwalk/digraph.hpp"

#include <algorithm>
#include <string>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

namespace {

std::string edge_str(const Edge& e) {
    return "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
}

} // namespace

DirectedGraph::DirectedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw PreconditionViolation("node count must be nonnegative");
    adj_.assign(static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1), 0);
    std::sort(edges_.begin(), edges_.end());
    for (const Edge& e : edges_) {
        if (e.from < 1 || e.from > n_ || e.to < 1 || e.to > n_)
            throw PreconditionViolation("edge endpoint out of range: " + edge_str(e));
        if (e.from == e.to) throw SelfLoop("self loop at node " + std::to_string(e.from));
        auto& cell = adj_[static_cast<std::size_t>(e.from) * static_cast<std::size_t>(n_ + 1) +
                          static_cast<std::size_t>(e.to)];
        if (cell) throw DuplicateEdge("duplicate edge " + edge_str(e));
        cell = 1;
    }
}

GraphParts decompose(const DirectedGraph& g) {
    std::vector<Edge> mutual, single;
    for (const Edge& e : g.edges()) {
        if (g.has_edge(e.to, e.from))
            mutual.push_back(e);
        else
            single.push_back(e);
    }
    return {DirectedGraph(g.node_count(), std::move(mutual)),
            DirectedGraph(g.node_count(), std::move(single))};
}

std::vector<NodePair> undir(std::span<const Edge> edges) {
    std::vector<NodePair> pairs;
    pairs.reserve(edges.size());
    for (const Edge& e : edges) pairs.push_back(node_pair(e.from, e.to));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<NodePair> undir(const DirectedGraph& g) { return undir(std::span(g.edges())); }

std::vector<Edge> recip(std::span<const NodePair> pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size() * 2);
    for (const NodePair& p : pairs) {
        edges.push_back({p.a, p.b});
        edges.push_back({p.b, p.a});
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

SufficientStats suff_stats(const DirectedGraph& g) {
    int n = g.node_count();
    SufficientStats s;
    s.out_degree.assign(static_cast<std::size_t>(n), 0);
    s.in_degree.assign(static_cast<std::size_t>(n), 0);
    s.recip_degree.assign(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edges()) {
        s.out_degree[static_cast<std::size_t>(e.from - 1)]++;
        s.in_degree[static_cast<std::size_t>(e.to - 1)]++;
        if (g.has_edge(e.to, e.from)) s.recip_degree[static_cast<std::size_t>(e.from - 1)]++;
    }
    return s;
}

DirectedGraph apply_move(const DirectedGraph& g, const Move& m) {
    for (const Edge& e : m.removed)
        if (!g.has_edge(e.from, e.to))
            throw PreconditionViolation("removed edge not present: " + edge_str(e));

    std::vector<Edge> removed = m.removed;
    std::sort(removed.begin(), removed.end());
    auto is_removed = [&](const Edge& e) {
        return std::binary_search(removed.begin(), removed.end(), e);
    };

    std::vector<Edge> result;
    result.reserve(g.edge_count() + m.added.size());
    for (const Edge& e : g.edges())
        if (!is_removed(e)) result.push_back(e);
    for (const Edge& e : m.added) {
        if (g.has_edge(e.from, e.to) && !is_removed(e))
            throw PreconditionViolation("added edge collides with existing edge: " + edge_str(e));
        result.push_back(e);
    }

    // DirectedGraph's constructor rejects duplicates and self loops, keeping
    // the result simple.
    DirectedGraph out(g.node_count(), std::move(result));
    if (!m.trivial() && !(suff_stats(out) == suff_stats(g)))
        throw StatMismatch("move changed the sufficient statistics");
    return out;
}

} // namespace fiberwalk
