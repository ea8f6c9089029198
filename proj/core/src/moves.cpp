#include "fiberwalk/moves.hpp"

#include <algorithm>
#include <optional>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

std::uint64_t composition_count(int m) {
    if (m < 0) throw InvalidSize("negative composition size");
    if (m > 90) throw TooLarge("composition count overflows 64 bits");
    // c[s] = number of compositions of s with every part >= 2
    std::vector<std::uint64_t> c(static_cast<std::size_t>(m) + 1, 0);
    c[0] = 1;
    for (int s = 2; s <= m; ++s)
        for (int p = 2; p <= s; ++p) c[static_cast<std::size_t>(s)] += c[static_cast<std::size_t>(s - p)];
    return c[static_cast<std::size_t>(m)];
}

Composition random_composition(int m, Rng& rng) {
    if (m < 2) throw InvalidSize("composition needs size >= 2");
    Composition comp;
    int remaining = m;
    while (remaining > 0) {
        // first part p with probability count(remaining - p) / count(remaining)
        std::uint64_t t = rng.below(composition_count(remaining));
        std::uint64_t acc = 0;
        for (int p = 2; p <= remaining; ++p) {
            acc += composition_count(remaining - p);
            if (t < acc) {
                comp.parts.push_back(p);
                remaining -= p;
                break;
            }
        }
    }
    return comp;
}

std::vector<Edge> complete_cycle(std::span<const Edge> part) {
    std::vector<Edge> out;
    out.reserve(part.size());
    const std::size_t m = part.size();
    for (std::size_t i = 0; i + 1 < m; ++i) out.push_back({part[i + 1].from, part[i].to});
    out.push_back({part[0].from, part[m - 1].to});
    return out;
}

std::vector<Edge> complete_cycles(std::span<const Edge> ordered, const Composition& comp) {
    std::vector<Edge> out;
    out.reserve(ordered.size());
    std::size_t offset = 0;
    for (int part : comp.parts) {
        auto block = ordered.subspan(offset, static_cast<std::size_t>(part));
        auto cycle = complete_cycle(block);
        out.insert(out.end(), cycle.begin(), cycle.end());
        offset += static_cast<std::size_t>(part);
    }
    return out;
}

namespace {

// Raw output of the reciprocated construction: mutual pairs to delete and the
// (unvalidated) re-pairings. constructed = false when no draw was possible.
struct PairCandidate {
    bool constructed = false;
    std::vector<NodePair> removed;
    std::vector<Edge> added_raw; // oriented; endpoints may repeat or collide
};

struct EdgeCandidate {
    bool constructed = false;
    std::vector<Edge> removed;
    std::vector<Edge> added_raw;
};

PairCandidate draw_pair_candidate(const DirectedGraph& recip_part, Rng& rng, int max_subset) {
    PairCandidate cand;
    const std::vector<NodePair> pairs = undir(recip_part);
    const int m = static_cast<int>(pairs.size());
    if (m < 2 || max_subset < 2) return cand;
    const int k = rng.uniform_int(2, std::min(max_subset, m));
    std::vector<Edge> oriented;
    oriented.reserve(static_cast<std::size_t>(k));
    for (int idx : rng.sample_indices(m, k)) {
        const NodePair p = pairs[static_cast<std::size_t>(idx)];
        cand.removed.push_back(p);
        oriented.push_back(rng.coin() ? Edge{p.a, p.b} : Edge{p.b, p.a});
    }
    const Composition comp = random_composition(k, rng);
    cand.added_raw = complete_cycles(oriented, comp);
    cand.constructed = true;
    return cand;
}

EdgeCandidate draw_edge_candidate(const DirectedGraph& unrecip_part, Rng& rng, int max_subset) {
    EdgeCandidate cand;
    const std::vector<Edge>& edges = unrecip_part.edges();
    const int m = static_cast<int>(edges.size());
    if (m < 2 || max_subset < 2) return cand;
    const int k = rng.uniform_int(2, std::min(max_subset, m));
    for (int idx : rng.sample_indices(m, k))
        cand.removed.push_back(edges[static_cast<std::size_t>(idx)]);
    const Composition comp = random_composition(k, rng);
    cand.added_raw = complete_cycles(cand.removed, comp);
    cand.constructed = true;
    return cand;
}

bool contains(const std::vector<NodePair>& sorted, const NodePair& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

// Validity of the reciprocated half: new pairs must be loop-free, pairwise
// distinct, and must not land on a dyad occupied by a surviving mutual pair
// or by any unreciprocated edge. Fills `added` with the normalized pairs.
bool pair_half_ok(const PairCandidate& cand, const GraphParts& parts,
                  std::vector<NodePair>& added) {
    added.clear();
    for (const Edge& e : cand.added_raw) {
        if (e.from == e.to) return false;
        added.push_back(node_pair(e.from, e.to));
    }
    std::sort(added.begin(), added.end());
    if (std::adjacent_find(added.begin(), added.end()) != added.end()) return false;

    std::vector<NodePair> removed = cand.removed;
    std::sort(removed.begin(), removed.end());
    for (const NodePair& p : added) {
        const bool in_recip = parts.reciprocated.has_edge(p.a, p.b);
        if (in_recip && !contains(removed, p)) return false;
        if (parts.unreciprocated.has_edge(p.a, p.b) || parts.unreciprocated.has_edge(p.b, p.a))
            return false;
    }
    return true;
}

// Validity of the unreciprocated half: no loops, skeleton-simple, no
// collision with a surviving unreciprocated edge (same or opposite
// orientation, the latter would silently create a mutual pair), and no
// overlap with any mutual dyad.
bool edge_half_ok(const EdgeCandidate& cand, const GraphParts& parts) {
    std::vector<NodePair> skeleton;
    for (const Edge& e : cand.added_raw) {
        if (e.from == e.to) return false;
        skeleton.push_back(node_pair(e.from, e.to));
    }
    std::sort(skeleton.begin(), skeleton.end());
    if (std::adjacent_find(skeleton.begin(), skeleton.end()) != skeleton.end()) return false;

    std::vector<Edge> removed = cand.removed;
    std::sort(removed.begin(), removed.end());
    auto is_removed = [&](const Edge& e) {
        return std::binary_search(removed.begin(), removed.end(), e);
    };
    for (const Edge& e : cand.added_raw) {
        if (parts.unreciprocated.has_edge(e.from, e.to) && !is_removed(e)) return false;
        const Edge rev{e.to, e.from};
        if (parts.unreciprocated.has_edge(rev.from, rev.to) && !is_removed(rev)) return false;
        if (parts.reciprocated.has_edge(e.from, e.to) || parts.reciprocated.has_edge(e.to, e.from))
            return false;
    }
    return true;
}

// Drops dyads that are removed and immediately re-added, then emits the move.
Move assemble(const std::vector<NodePair>& pair_removed, const std::vector<NodePair>& pair_added,
              const std::vector<Edge>& edge_removed, const std::vector<Edge>& edge_added) {
    std::vector<NodePair> pr = pair_removed, pa = pair_added;
    std::sort(pr.begin(), pr.end());
    std::sort(pa.begin(), pa.end());
    std::vector<NodePair> pr2, pa2;
    std::set_difference(pr.begin(), pr.end(), pa.begin(), pa.end(), std::back_inserter(pr2));
    std::set_difference(pa.begin(), pa.end(), pr.begin(), pr.end(), std::back_inserter(pa2));

    std::vector<Edge> er = edge_removed, ea = edge_added;
    std::sort(er.begin(), er.end());
    std::sort(ea.begin(), ea.end());
    Move move;
    move.removed = recip(pr2);
    move.added = recip(pa2);
    std::set_difference(er.begin(), er.end(), ea.begin(), ea.end(), std::back_inserter(move.removed));
    std::set_difference(ea.begin(), ea.end(), er.begin(), er.end(), std::back_inserter(move.added));
    std::sort(move.removed.begin(), move.removed.end());
    std::sort(move.added.begin(), move.added.end());
    return move;
}

} // namespace

Move reciprocated_move(const GraphParts& parts, Rng& rng, int max_subset) {
    const PairCandidate cand = draw_pair_candidate(parts.reciprocated, rng, max_subset);
    if (!cand.constructed) return {};
    std::vector<NodePair> added;
    if (!pair_half_ok(cand, parts, added)) return {};
    return assemble(cand.removed, added, {}, {});
}

Move unreciprocated_move(const GraphParts& parts, Rng& rng, int max_subset) {
    const EdgeCandidate cand = draw_edge_candidate(parts.unreciprocated, rng, max_subset);
    if (!cand.constructed) return {};
    if (!edge_half_ok(cand, parts)) return {};
    return assemble({}, {}, cand.removed, cand.added_raw);
}

Move mixed_move(const GraphParts& parts, Rng& rng, int max_subset) {
    const PairCandidate pc = draw_pair_candidate(parts.reciprocated, rng, max_subset);
    const EdgeCandidate ec = draw_edge_candidate(parts.unreciprocated, rng, max_subset);
    if (!pc.constructed && !ec.constructed) return {};

    std::vector<NodePair> pair_added;
    if (pc.constructed && !pair_half_ok(pc, parts, pair_added)) return {};
    if (ec.constructed && !edge_half_ok(ec, parts)) return {};

    // The two halves must not touch the same dyad.
    if (pc.constructed && ec.constructed) {
        std::vector<NodePair> edge_skeleton;
        for (const Edge& e : ec.added_raw) edge_skeleton.push_back(node_pair(e.from, e.to));
        std::sort(edge_skeleton.begin(), edge_skeleton.end());
        for (const NodePair& p : pair_added)
            if (std::binary_search(edge_skeleton.begin(), edge_skeleton.end(), p)) return {};
    }

    return assemble(pc.constructed ? pc.removed : std::vector<NodePair>{}, pair_added,
                    ec.constructed ? ec.removed : std::vector<Edge>{},
                    ec.constructed ? ec.added_raw : std::vector<Edge>{});
}

Move generate_move(const GraphParts& parts, const ProposalOptions& opts, Rng& rng) {
    const MoveWeights& w = opts.weights;
    if (w.reciprocated < 0 || w.unreciprocated < 0 || w.mixed < 0)
        throw PreconditionViolation("move-type weights must be nonnegative");
    const double sum = w.reciprocated + w.unreciprocated + w.mixed;
    if (sum <= 0) throw PreconditionViolation("move-type weights must not all be zero");
    const double weights[3] = {w.reciprocated, w.unreciprocated, w.mixed};
    switch (rng.categorical(weights)) {
        case 0: return reciprocated_move(parts, rng, opts.max_subset);
        case 1: return unreciprocated_move(parts, rng, opts.max_subset);
        default: return mixed_move(parts, rng, opts.max_subset);
    }
}

Move generate_move(const DirectedGraph& g, const ProposalOptions& opts, Rng& rng) {
    return generate_move(decompose(g), opts, rng);
}

std::pair<EdgeMultiset, EdgeMultiset> bipartite_move(const EdgeMultiset& eu,
                                                     const ParamHypergraph& h, Rng& rng,
                                                     int max_subset) {
    // Each item is one copy of an x_i y_j edge, encoded as (i, j).
    std::vector<Edge> items;
    for (const auto& [edge, count] : eu.entries()) {
        if (edge.size() != 2 || edge[0].kind != ParamVertex::Kind::RowX ||
            edge[1].kind != ParamVertex::Kind::ColY)
            throw PreconditionViolation("multiset is not over a bipartite row/column hypergraph");
        if (!h.has_cell({edge[0].i, edge[1].i}))
            throw PreconditionViolation("multiset edge not present in the hypergraph");
        for (long long c = 0; c < count; ++c) items.push_back({edge[0].i, edge[1].i});
    }

    EdgeMultiset removed, added;
    const int m = static_cast<int>(items.size());
    if (m < 2 || max_subset < 2) return {removed, added};

    const int k = rng.uniform_int(2, std::min(max_subset, m));
    std::vector<Edge> selected;
    selected.reserve(static_cast<std::size_t>(k));
    for (int idx : rng.sample_indices(m, k)) selected.push_back(items[static_cast<std::size_t>(idx)]);
    const Composition comp = random_composition(k, rng);

    for (const Edge& e : selected) removed.add({row_vertex(e.from), col_vertex(e.to)});
    for (const Edge& e : complete_cycles(selected, comp))
        added.add({row_vertex(e.from), col_vertex(e.to)});
    return {removed, added};
}

} // namespace fiberwalk
