#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fiberwalk/digraph.hpp"
#include "fiberwalk/hypergraph.hpp"
#include "fiberwalk/rng.hpp"

namespace fiberwalk {

// Probabilities of attempting a reciprocated-only, unreciprocated-only or
// mixed move. Must be nonnegative and sum to 1.
struct MoveWeights {
    double reciprocated = 0.34;
    double unreciprocated = 0.33;
    double mixed = 0.33;
};

struct ProposalOptions {
    MoveWeights weights{};
    // Largest number of edges (per part) removed by one move. The selection
    // distribution depends only on edge counts, which are fiber-invariant, so
    // the proposal kernel stays symmetric.
    int max_subset = 10;
};

// Ordered list of part sizes, every part >= 2.
struct Composition {
    std::vector<int> parts;
};

// Number of compositions of m with all parts >= 2.
std::uint64_t composition_count(int m);

// Uniform over all compositions of m with parts >= 2, sampled exactly from
// the count table. Throws InvalidSize for m < 2.
Composition random_composition(int m, Rng& rng);

// Cyclic completion of one part: for removed edges (e_1, ..., e_m) returns
// the edges (tail(e_{i+1}), head(e_i)) for i = 1..m-1 plus
// (tail(e_1), head(e_m)). The result uses every tail and every head exactly
// once, so it balances the removed edges' endpoint roles.
std::vector<Edge> complete_cycle(std::span<const Edge> part);

// Applies complete_cycle to each block of the composition.
std::vector<Edge> complete_cycles(std::span<const Edge> ordered, const Composition& comp);

// Draws a move type with the given weights and dispatches. The returned move
// may be trivial; trivial moves are never resampled.
Move generate_move(const DirectedGraph& g, const ProposalOptions& opts, Rng& rng);
Move generate_move(const GraphParts& parts, const ProposalOptions& opts, Rng& rng);

// Removes a random set of mutual pairs and re-pairs their endpoints into new
// mutual pairs along random cycles. Trivial when no valid re-pairing was
// drawn (self-pair, duplicate, collision with surviving edges of either part).
Move reciprocated_move(const GraphParts& parts, Rng& rng, int max_subset = 10);

// Removes a random set of unreciprocated edges and re-pairs tails with heads
// along random cycles. Trivial on any collision, including an added edge
// opposite a surviving unreciprocated edge (which would create a mutual pair
// and change the statistics).
Move unreciprocated_move(const GraphParts& parts, Rng& rng, int max_subset = 10);

// Runs both constructions and unions the results, subject to the joint
// validity checks (the two added sets must also be skeleton-disjoint).
Move mixed_move(const GraphParts& parts, Rng& rng, int max_subset = 10);

// Random applicable move for an independence-model table: a sub-multiset R of
// eu together with the cyclic completion B on the bipartite parameter graph.
// The pair is always degree-balanced; both sets are empty on degenerate draws.
std::pair<EdgeMultiset, EdgeMultiset> bipartite_move(const EdgeMultiset& eu,
                                                     const ParamHypergraph& h, Rng& rng,
                                                     int max_subset = 10);

} // namespace fiberwalk
