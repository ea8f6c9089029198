#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fiberwalk/digraph.hpp"
#include "fiberwalk/hypergraph.hpp"
#include "fiberwalk/moves.hpp"
#include "fiberwalk/p1.hpp"

namespace fiberwalk {

// Canonical form of a graph for visit tracking: its sorted edge list.
using GraphKey = std::vector<Edge>;

struct ChainConfig {
    std::uint64_t steps = 0;    // total steps, including burn-in
    std::uint64_t burn_in = 0;  // leading steps excluded from the estimate
    std::uint64_t seed = 0;
    MoveWeights weights{};
    int max_subset = 10;
    std::uint64_t trace_every = 1;
    bool track_visited = false;    // visit histogram of canonical forms
    int track_dyad_limit = 200;    // tracking is disabled above this dyad count
    bool record_states = false;    // per-step state ids, for mixing diagnostics
    bool collect_gf_samples = false; // post-burn-in statistic values
    FitOptions fit{};
};

struct TraceRow {
    std::uint64_t step = 0;
    double gf = 0.0;
    std::uint8_t accepted = 0;
    std::uint8_t trivial = 0;
    double running_p = 0.0; // NaN during burn-in
    std::uint64_t distinct_visited = 0;
};

struct ChainResult {
    double gf_observed = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t burn_in = 0;

    // k / (steps - burn_in), counting states whose statistic is >= observed.
    double p_value = 0.0;
    // Same count over all steps, burn-in included.
    double p_value_with_burnin = 0.0;
    std::uint64_t tail_count = 0;
    std::uint64_t tail_count_with_burnin = 0;

    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t trivial_moves = 0;

    std::uint64_t distinct_visited = 0;
    std::map<GraphKey, std::uint64_t> visit_histogram;

    // When record_states: state id at step t (0 = initial state), ids in
    // first-visit order, and the corresponding canonical forms.
    std::vector<std::uint32_t> state_ids;
    std::vector<GraphKey> state_keys;

    std::vector<TraceRow> trace;
    std::vector<double> gf_samples;

    FitReport fit;
};

// Metropolis walk on the observable fiber of g. Fits the model once, then at
// each step proposes a generated move, accepts with the conditional-weight
// ratio (identically 1 here since every cell is 0/1), and counts states whose
// chi-square statistic ties or exceeds the observed value. The sufficient
// statistics are re-verified at every accepted step. Throws TooFewEdges when
// g has at most 2 edges; DegenerateFit propagates from the fit.
ChainResult run_chain(const DirectedGraph& g, const ChainConfig& cfg);

// Hypergeometric weight of the conditional distribution on the fiber: the
// product over cells of 1/u_cell!. Every cell of a simple network is 0 or 1,
// so the network overload evaluates to 1 exactly.
double conditional_weight(const DirectedGraph& g);
double conditional_weight(const Table& u);

// Weight ratio f(u with R removed and B added) / f(u), evaluated over the
// changed cells only.
double conditional_weight_ratio(const Table& u, const EdgeMultiset& removed,
                                const EdgeMultiset& added, const ParamHypergraph& h);

// Applies a balanced table move; throws PreconditionViolation if a cell would
// go negative.
Table apply_table_move(const Table& u, const EdgeMultiset& removed, const EdgeMultiset& added,
                       const ParamHypergraph& h);

// Total variation distance between the empirical visit distribution and the
// uniform distribution on a fiber of the given size. Unvisited elements
// contribute 1/fiber_size each. Throws InvalidSize if fiber_size is smaller
// than the number of visited states.
double tv_distance(const std::map<GraphKey, std::uint64_t>& hist, std::uint64_t fiber_size);
double tv_distance(std::span<const std::uint64_t> visit_counts, std::uint64_t fiber_size);

} // namespace fiberwalk
