#include "fiberwalk/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fiberwalk/errors.hpp"
#include "fiberwalk/rng.hpp"

namespace fiberwalk {

namespace {

double factorial(long long k) {
    double f = 1.0;
    for (long long t = 2; t <= k; ++t) f *= static_cast<double>(t);
    return f;
}

// Hypergeometric weight ratio f(u+m)/f(u) over the cells a dyadic move
// touches. Each touched dyad moves its unit between two 0/1 cells, so every
// factor is 0!1!/1!0! and the ratio is exactly 1.
double p1_weight_ratio(const Move& move) {
    std::vector<NodePair> touched = undir(std::span(move.removed));
    const std::vector<NodePair> gained = undir(std::span(move.added));
    touched.insert(touched.end(), gained.begin(), gained.end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    double ratio = 1.0;
    for ([[maybe_unused]] const NodePair& d : touched) {
        ratio *= factorial(0) / factorial(1); // cell the dyad enters
        ratio *= factorial(1) / factorial(0); // cell it leaves
    }
    return ratio;
}

} // namespace

double conditional_weight(const DirectedGraph& g) {
    // Every dyad cell of a simple network holds 0 or 1, so the product is 1.
    double w = 1.0;
    const int n = g.node_count();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const int s = static_cast<int>(g.dyad_state(i, j));
            for (int c = 0; c < 4; ++c) w /= factorial(c == s ? 1 : 0);
        }
    return w;
}

double conditional_weight(const Table& u) {
    double w = 1.0;
    for (long long v : u.values) {
        if (v < 0) throw ShapeMismatch("negative table entry");
        w /= factorial(v);
    }
    return w;
}

double conditional_weight_ratio(const Table& u, const EdgeMultiset& removed,
                                const EdgeMultiset& added, const ParamHypergraph& h) {
    // Net change per cell; untouched cells cancel.
    std::map<CellKey, long long> delta;
    for (const auto& [e, c] : removed.entries()) delta[h.cell_for_edge(e)] -= c;
    for (const auto& [e, c] : added.entries()) delta[h.cell_for_edge(e)] += c;

    double ratio = 1.0;
    for (const auto& [cell, d] : delta) {
        const long long v_old = u.at(cell);
        const long long v_new = v_old + d;
        if (v_new < 0) throw PreconditionViolation("move drives a cell negative");
        if (v_new > v_old)
            for (long long t = v_old + 1; t <= v_new; ++t) ratio /= static_cast<double>(t);
        else
            for (long long t = v_new + 1; t <= v_old; ++t) ratio *= static_cast<double>(t);
    }
    return ratio;
}

Table apply_table_move(const Table& u, const EdgeMultiset& removed, const EdgeMultiset& added,
                       const ParamHypergraph& h) {
    Table v = u;
    for (const auto& [e, c] : removed.entries()) {
        long long& cell = v.at(h.cell_for_edge(e));
        cell -= c;
        if (cell < 0) throw PreconditionViolation("move drives a cell negative");
    }
    for (const auto& [e, c] : added.entries()) v.at(h.cell_for_edge(e)) += c;
    return v;
}

double tv_distance(std::span<const std::uint64_t> visit_counts, std::uint64_t fiber_size) {
    if (fiber_size < visit_counts.size())
        throw InvalidSize("fiber smaller than the number of visited states");
    std::uint64_t total = 0;
    for (std::uint64_t c : visit_counts) total += c;
    if (total == 0) throw PreconditionViolation("empty visit histogram");
    const double uniform = 1.0 / static_cast<double>(fiber_size);
    double sum = 0.0;
    for (std::uint64_t c : visit_counts)
        sum += std::abs(static_cast<double>(c) / static_cast<double>(total) - uniform);
    sum += static_cast<double>(fiber_size - visit_counts.size()) * uniform;
    return 0.5 * sum;
}

double tv_distance(const std::map<GraphKey, std::uint64_t>& hist, std::uint64_t fiber_size) {
    std::vector<std::uint64_t> counts;
    counts.reserve(hist.size());
    for (const auto& [key, c] : hist) counts.push_back(c);
    return tv_distance(counts, fiber_size);
}

ChainResult run_chain(const DirectedGraph& g, const ChainConfig& cfg) {
    if (cfg.burn_in > cfg.steps) throw PreconditionViolation("burn-in exceeds step count");
    if (cfg.trace_every < 1) throw PreconditionViolation("trace_every must be >= 1");
    if (g.edge_count() <= 2) throw TooFewEdges("the walk needs a network with more than 2 edges");

    const int n = g.node_count();
    const int dyads = dyad_count(n);

    ChainResult res;
    res.steps = cfg.steps;
    res.burn_in = cfg.burn_in;
    res.fit = fit_p1(g, cfg.fit);
    res.gf_observed = chi_square(g, res.fit.fit);

    // Statistic contribution of each dyad in each of its four states, frozen
    // from the fit. A state below the probability floor must never be
    // visited; visiting it raises DegenerateFit like chi_square would.
    std::vector<std::array<double, 4>> contrib(static_cast<std::size_t>(dyads));
    std::vector<std::array<bool, 4>> valid(static_cast<std::size_t>(dyads));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const auto d = static_cast<std::size_t>(dyad_index(n, i, j));
            for (int c = 0; c < 4; ++c) {
                const auto s = static_cast<DyadState>(c);
                try {
                    contrib[d][static_cast<std::size_t>(c)] = dyad_chi_term(res.fit.fit.dyad(i, j), s);
                    valid[d][static_cast<std::size_t>(c)] = true;
                } catch (const DegenerateFit&) {
                    contrib[d][static_cast<std::size_t>(c)] = 0.0;
                    valid[d][static_cast<std::size_t>(c)] = false;
                }
            }
        }

    const SufficientStats observed = suff_stats(g);
    DirectedGraph current = g;
    std::vector<std::uint8_t> state(static_cast<std::size_t>(dyads));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            state[static_cast<std::size_t>(dyad_index(n, i, j))] =
                static_cast<std::uint8_t>(current.dyad_state(i, j));

    auto current_gf = [&]() {
        double total = 0.0;
        for (int d = 0; d < dyads; ++d) {
            const auto du = static_cast<std::size_t>(d);
            const auto s = state[du];
            if (!valid[du][s])
                throw DegenerateFit("walk reached a configuration with probability below the floor");
            total += contrib[du][s];
        }
        return total;
    };

    const bool tracking = cfg.track_visited && dyads <= cfg.track_dyad_limit;
    std::map<GraphKey, std::uint32_t> first_seen;
    auto record_visit = [&]() {
        if (tracking) res.visit_histogram[current.edges()]++;
        if (cfg.record_states) {
            auto [it, inserted] =
                first_seen.emplace(current.edges(), static_cast<std::uint32_t>(first_seen.size()));
            if (inserted) res.state_keys.push_back(current.edges());
            res.state_ids.push_back(it->second);
        }
    };
    record_visit();

    Rng rng(cfg.seed);
    const ProposalOptions prop{cfg.weights, cfg.max_subset};
    std::uint64_t post_steps = 0;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::uint64_t step = 1; step <= cfg.steps; ++step) {
        const Move move = generate_move(current, prop, rng);
        bool accepted = false;
        if (move.trivial()) {
            res.trivial_moves++;
        } else {
            DirectedGraph proposal = apply_move(current, move); // verifies the statistics
            const double q = std::min(1.0, p1_weight_ratio(move));
            if (q >= 1.0 || rng.uniform01() < q) {
                current = std::move(proposal);
                for (const Edge& e : move.removed)
                    state[static_cast<std::size_t>(dyad_index(n, std::min(e.from, e.to),
                                                              std::max(e.from, e.to)))] =
                        static_cast<std::uint8_t>(current.dyad_state(std::min(e.from, e.to),
                                                                     std::max(e.from, e.to)));
                for (const Edge& e : move.added)
                    state[static_cast<std::size_t>(dyad_index(n, std::min(e.from, e.to),
                                                              std::max(e.from, e.to)))] =
                        static_cast<std::uint8_t>(current.dyad_state(std::min(e.from, e.to),
                                                                     std::max(e.from, e.to)));
                res.accepted++;
                accepted = true;
            } else {
                res.rejected++;
            }
        }

        // every state of the walk stays inside the observable fiber
        if (!(suff_stats(current) == observed))
            throw StatMismatch("chain left the observable fiber");

        const double gf = current_gf();
        const bool tail = gf >= res.gf_observed;
        if (tail) res.tail_count_with_burnin++;
        if (step > cfg.burn_in) {
            post_steps++;
            if (tail) res.tail_count++;
            if (cfg.collect_gf_samples) res.gf_samples.push_back(gf);
        }

        record_visit();

        if (step % cfg.trace_every == 0) {
            TraceRow row;
            row.step = step;
            row.gf = gf;
            row.accepted = accepted ? 1 : 0;
            row.trivial = move.trivial() ? 1 : 0;
            row.running_p = post_steps == 0
                                ? nan
                                : static_cast<double>(res.tail_count) / static_cast<double>(post_steps);
            row.distinct_visited =
                tracking ? res.visit_histogram.size()
                         : (cfg.record_states ? first_seen.size() : 0);
            res.trace.push_back(row);
        }
    }

    res.distinct_visited = tracking ? res.visit_histogram.size()
                                    : (cfg.record_states ? first_seen.size() : 0);
    res.p_value = post_steps == 0
                      ? nan
                      : static_cast<double>(res.tail_count) / static_cast<double>(post_steps);
    res.p_value_with_burnin =
        cfg.steps == 0 ? nan
                       : static_cast<double>(res.tail_count_with_burnin) /
                             static_cast<double>(cfg.steps);
    return res;
}

} // namespace fiberwalk
