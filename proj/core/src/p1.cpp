#include "fiberwalk/p1.hpp"

#include <algorithm>
#include <cmath>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

namespace {

// Monomials of the four configurations with lambda factored out.
inline std::array<double, 4> dyad_monomials(const P1Params& p, int i, int j) {
    const double ai = p.alpha[static_cast<std::size_t>(i - 1)];
    const double aj = p.alpha[static_cast<std::size_t>(j - 1)];
    const double bi = p.beta[static_cast<std::size_t>(i - 1)];
    const double bj = p.beta[static_cast<std::size_t>(j - 1)];
    const double out = ai * bj;
    const double in = aj * bi;
    const double mut = out * in * p.rho[static_cast<std::size_t>(i - 1)] *
                       p.rho[static_cast<std::size_t>(j - 1)];
    return {1.0, out, in, mut};
}

} // namespace

DyadProbs dyad_probs(const P1Params& params, int i, int j) {
    const auto m = dyad_monomials(params, i, j);
    const double l = params.lambda_at(i, j);
    return {l * m[0], l * m[1], l * m[2], l * m[3]};
}

P1Params normalized_params(int n, std::vector<double> alpha, std::vector<double> beta,
                           std::vector<double> rho) {
    P1Params p;
    p.n = n;
    p.alpha = std::move(alpha);
    p.beta = std::move(beta);
    p.rho = std::move(rho);
    p.lambda.assign(static_cast<std::size_t>(dyad_count(n)), 0.0);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const auto m = dyad_monomials(p, i, j);
            p.lambda[static_cast<std::size_t>(dyad_index(n, i, j))] =
                1.0 / (m[0] + m[1] + m[2] + m[3]);
        }
    return p;
}

ExpectedStats expected_stats(const P1Fit& fit) {
    const int n = fit.n;
    ExpectedStats e;
    e.out_degree.assign(static_cast<std::size_t>(n), 0.0);
    e.in_degree.assign(static_cast<std::size_t>(n), 0.0);
    e.recip_degree.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const DyadProbs& p = fit.dyad(i, j);
            e.out_degree[static_cast<std::size_t>(i - 1)] += p[1] + p[3];
            e.out_degree[static_cast<std::size_t>(j - 1)] += p[2] + p[3];
            e.in_degree[static_cast<std::size_t>(j - 1)] += p[1] + p[3];
            e.in_degree[static_cast<std::size_t>(i - 1)] += p[2] + p[3];
            e.recip_degree[static_cast<std::size_t>(i - 1)] += p[3];
            e.recip_degree[static_cast<std::size_t>(j - 1)] += p[3];
        }
    return e;
}

namespace {

P1Fit probs_from_params(const P1Params& params) {
    P1Fit fit;
    fit.n = params.n;
    fit.probs.resize(static_cast<std::size_t>(dyad_count(params.n)));
    for (int i = 1; i <= params.n; ++i)
        for (int j = i + 1; j <= params.n; ++j)
            fit.probs[static_cast<std::size_t>(dyad_index(params.n, i, j))] =
                dyad_probs(params, i, j);
    return fit;
}

// Expected (out, in, recip) margins of one node with the current parameters,
// each dyad normalized on the fly.
struct NodeMargins {
    double out = 0.0;
    double in = 0.0;
    double recip = 0.0;
};

NodeMargins node_margins(const P1Params& p, int v) {
    NodeMargins m;
    for (int w = 1; w <= p.n; ++w) {
        if (w == v) continue;
        const int i = std::min(v, w), j = std::max(v, w);
        const auto mono = dyad_monomials(p, i, j);
        const double s = mono[0] + mono[1] + mono[2] + mono[3];
        const double p_vw = (v == i ? mono[1] : mono[2]) / s; // edge v->w
        const double p_wv = (v == i ? mono[2] : mono[1]) / s;
        const double p_mut = mono[3] / s;
        m.out += p_vw + p_mut;
        m.in += p_wv + p_mut;
        m.recip += p_mut;
    }
    return m;
}

} // namespace

FitReport fit_p1(const DirectedGraph& g, const FitOptions& opts) {
    const int n = g.node_count();
    if (n < 2) throw InvalidSize("fit needs at least 2 nodes");
    if (opts.tol <= 0) throw PreconditionViolation("tolerance must be positive");

    const SufficientStats obs = suff_stats(g);

    P1Params p;
    p.n = n;
    p.alpha.assign(static_cast<std::size_t>(n), 1.0);
    p.beta.assign(static_cast<std::size_t>(n), 1.0);
    p.rho.assign(static_cast<std::size_t>(n), 1.0);
    p.lambda.assign(static_cast<std::size_t>(dyad_count(n)), 0.25);

    // Parameters whose observed margin is zero are pinned to the floor; the
    // corresponding expected margin then stays (essentially) zero as well.
    std::vector<bool> pin_alpha(static_cast<std::size_t>(n)), pin_beta(static_cast<std::size_t>(n)),
        pin_rho(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto u = static_cast<std::size_t>(v);
        if (obs.out_degree[u] == 0) { pin_alpha[u] = true; p.alpha[u] = opts.param_floor; }
        if (obs.in_degree[u] == 0) { pin_beta[u] = true; p.beta[u] = opts.param_floor; }
        if (obs.recip_degree[u] == 0) { pin_rho[u] = true; p.rho[u] = opts.param_floor; }
    }

    int iter = 0;
    double residual = 0.0;
    for (; iter < opts.max_iter; ++iter) {
        // One cycle of proportional updates, each node against fresh margins.
        for (int v = 1; v <= n; ++v) {
            auto u = static_cast<std::size_t>(v - 1);
            if (pin_alpha[u]) continue;
            const double expected = node_margins(p, v).out;
            p.alpha[u] *= static_cast<double>(obs.out_degree[u]) / expected;
        }
        for (int v = 1; v <= n; ++v) {
            auto u = static_cast<std::size_t>(v - 1);
            if (pin_beta[u]) continue;
            const double expected = node_margins(p, v).in;
            p.beta[u] *= static_cast<double>(obs.in_degree[u]) / expected;
        }
        for (int v = 1; v <= n; ++v) {
            auto u = static_cast<std::size_t>(v - 1);
            if (pin_rho[u]) continue;
            const double expected = node_margins(p, v).recip;
            p.rho[u] *= static_cast<double>(obs.recip_degree[u]) / expected;
        }

        residual = 0.0;
        for (int v = 1; v <= n; ++v) {
            auto u = static_cast<std::size_t>(v - 1);
            const NodeMargins m = node_margins(p, v);
            residual = std::max(residual, std::abs(m.out - obs.out_degree[u]));
            residual = std::max(residual, std::abs(m.in - obs.in_degree[u]));
            residual = std::max(residual, std::abs(m.recip - obs.recip_degree[u]));
        }
        if (residual <= opts.tol) { ++iter; break; }
    }

    // Fold the normalization into lambda so dyad_probs on the returned
    // parameters reproduces the fitted probabilities.
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const auto m = dyad_monomials(p, i, j);
            p.lambda[static_cast<std::size_t>(dyad_index(n, i, j))] =
                1.0 / (m[0] + m[1] + m[2] + m[3]);
        }

    FitReport report;
    report.fit = probs_from_params(p);
    report.params = std::move(p);
    report.iterations = iter;
    report.max_stat_residual = residual;
    report.converged = residual <= opts.tol;
    return report;
}

double dyad_chi_term(const DyadProbs& p, DyadState s, double prob_floor) {
    double term = 0.0;
    for (int c = 0; c < 4; ++c) {
        const double prob = p[static_cast<std::size_t>(c)];
        const double ind = (static_cast<int>(s) == c) ? 1.0 : 0.0;
        if (ind > 0.0 && prob < prob_floor)
            throw DegenerateFit("observed configuration has probability below the floor");
        const double d = ind - prob;
        term += d * d / std::max(prob, prob_floor);
    }
    return term;
}

double chi_square(const DirectedGraph& g, const P1Fit& fit, double prob_floor) {
    if (fit.n != g.node_count()) throw ShapeMismatch("fit does not cover the graph");
    double total = 0.0;
    for (int i = 1; i <= g.node_count(); ++i)
        for (int j = i + 1; j <= g.node_count(); ++j)
            total += dyad_chi_term(fit.dyad(i, j), g.dyad_state(i, j), prob_floor);
    return total;
}

} // namespace fiberwalk
