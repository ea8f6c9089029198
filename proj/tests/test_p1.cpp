#include <doctest.h>

#include <cmath>

#include "fiberwalk/digraph.hpp"
#include "fiberwalk/errors.hpp"
#include "fiberwalk/p1.hpp"
#include "fiberwalk/rng.hpp"

using namespace fiberwalk;

namespace {

// expectations recomputed directly from the fitted probabilities
void check_residual(const DirectedGraph& g, const FitReport& rep, double tol) {
    const auto obs = suff_stats(g);
    const auto exp = expected_stats(rep.fit);
    for (int v = 0; v < g.node_count(); ++v) {
        CHECK(std::abs(exp.out_degree[v] - obs.out_degree[v]) <= tol);
        CHECK(std::abs(exp.in_degree[v] - obs.in_degree[v]) <= tol);
        CHECK(std::abs(exp.recip_degree[v] - obs.recip_degree[v]) <= tol);
    }
}

DirectedGraph random_graph(int n, Rng& rng) {
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            switch (rng.uniform_int(0, 3)) {
                case 1: edges.push_back({i, j}); break;
                case 2: edges.push_back({j, i}); break;
                case 3:
                    edges.push_back({i, j});
                    edges.push_back({j, i});
                    break;
                default: break;
            }
        }
    return DirectedGraph(n, std::move(edges));
}

// every margin strictly between 0 and its maximum
bool nondegenerate(const DirectedGraph& g) {
    const auto s = suff_stats(g);
    const int n = g.node_count();
    for (int v = 0; v < n; ++v) {
        if (s.out_degree[v] < 1 || s.out_degree[v] > n - 2) return false;
        if (s.in_degree[v] < 1 || s.in_degree[v] > n - 2) return false;
        if (s.recip_degree[v] < 1 || s.recip_degree[v] > n - 2) return false;
    }
    return true;
}

} // namespace

TEST_CASE("dyad probabilities") {
    SUBCASE("all-ones parameters normalize to 1/4") {
        const auto p = normalized_params(2, {1, 1}, {1, 1}, {1, 1});
        const auto probs = dyad_probs(p, 1, 2);
        for (double q : probs) CHECK(q == doctest::Approx(0.25));
    }
    SUBCASE("alpha_i = 2") {
        const auto p = normalized_params(2, {2, 1}, {1, 1}, {1, 1});
        const auto probs = dyad_probs(p, 1, 2);
        CHECK(probs[0] == doctest::Approx(1.0 / 6));
        CHECK(probs[1] == doctest::Approx(2.0 / 6));
        CHECK(probs[2] == doctest::Approx(1.0 / 6));
        CHECK(probs[3] == doctest::Approx(2.0 / 6));
    }
    SUBCASE("vanishing reciprocation") {
        const auto p = normalized_params(2, {1, 1}, {1, 1}, {1e-14, 1e-14});
        const auto probs = dyad_probs(p, 1, 2);
        CHECK(probs[3] < 1e-20);
        CHECK(probs[0] == doctest::Approx(1.0 / 3));
        CHECK(probs[1] == doctest::Approx(1.0 / 3));
        CHECK(probs[2] == doctest::Approx(1.0 / 3));
    }
}

TEST_CASE("fit matches the observed margins on random graphs") {
    Rng rng(2024);
    int fitted = 0;
    while (fitted < 10) {
        const auto g = random_graph(8, rng);
        if (!nondegenerate(g)) continue;
        fitted++;
        const auto rep = fit_p1(g);
        CHECK(rep.converged);
        CHECK(rep.max_stat_residual <= 1e-8);
        check_residual(g, rep, 1e-8);
        // per-dyad normalization
        for (const auto& probs : rep.fit.probs) {
            const double sum = probs[0] + probs[1] + probs[2] + probs[3];
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("degenerate single-dyad fit runs to the boundary") {
    const DirectedGraph g(2, {{1, 2}, {2, 1}});
    const auto rep = fit_p1(g, {.tol = 1e-8, .max_iter = 200});
    CHECK(!rep.converged);
    CHECK(rep.fit.dyad(1, 2)[3] > 0.9); // p11 -> 1
}

TEST_CASE("symmetric graph gives identical dyad probabilities") {
    std::vector<Edge> edges;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if (i != j) edges.push_back({i, j});
    const DirectedGraph g(4, std::move(edges));
    const auto rep = fit_p1(g, {.tol = 1e-8, .max_iter = 500});
    const auto& first = rep.fit.probs.front();
    for (const auto& probs : rep.fit.probs)
        for (int c = 0; c < 4; ++c)
            CHECK(probs[static_cast<std::size_t>(c)] ==
                  doctest::Approx(first[static_cast<std::size_t>(c)]).epsilon(1e-9));
}

TEST_CASE("fit rejects tiny graphs") {
    CHECK_THROWS_AS(fit_p1(DirectedGraph(1, {})), InvalidSize);
}

TEST_CASE("chi-square statistic") {
    SUBCASE("perfect fit scores zero") {
        const DirectedGraph g(2, {{1, 2}});
        P1Fit fit;
        fit.n = 2;
        fit.probs = {{0.0, 1.0, 0.0, 0.0}};
        CHECK(chi_square(g, fit) == doctest::Approx(0.0));
    }
    SUBCASE("uniform fit, one observed configuration") {
        const DirectedGraph g(2, {{1, 2}});
        P1Fit fit;
        fit.n = 2;
        fit.probs = {{0.25, 0.25, 0.25, 0.25}};
        CHECK(chi_square(g, fit) == doctest::Approx(3.0));
    }
    SUBCASE("observed configuration with vanishing probability") {
        const DirectedGraph g(2, {{1, 2}});
        P1Fit fit;
        fit.n = 2;
        fit.probs = {{1.0, 0.0, 0.0, 0.0}};
        CHECK_THROWS_AS(chi_square(g, fit), DegenerateFit);
    }
    SUBCASE("mismatched sizes") {
        const DirectedGraph g(3, {{1, 2}});
        P1Fit fit;
        fit.n = 2;
        fit.probs = {{0.25, 0.25, 0.25, 0.25}};
        CHECK_THROWS_AS(chi_square(g, fit), ShapeMismatch);
    }
}

TEST_CASE("chi-square is invariant under consistent relabeling") {
    Rng rng(99);
    const auto g = random_graph(6, rng);
    const auto rep = fit_p1(g, {.tol = 1e-10, .max_iter = 5000});

    // relabel nodes by the permutation v -> perm[v-1]
    std::vector<int> perm{3, 1, 6, 2, 5, 4};
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) edges.push_back({perm[e.from - 1], perm[e.to - 1]});
    const DirectedGraph h(6, std::move(edges));

    P1Fit moved;
    moved.n = 6;
    moved.probs.resize(static_cast<std::size_t>(dyad_count(6)));
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j) {
            const int pi = perm[i - 1], pj = perm[j - 1];
            DyadProbs p = rep.fit.dyad(i, j);
            if (pi > pj) std::swap(p[1], p[2]); // orientation flips with the labels
            moved.probs[static_cast<std::size_t>(
                dyad_index(6, std::min(pi, pj), std::max(pi, pj)))] = p;
        }
    CHECK(chi_square(h, moved) == doctest::Approx(chi_square(g, rep.fit)).epsilon(1e-12));
}

TEST_CASE("fiber elements share the fitted likelihood") {
    // two graphs with equal statistics: swap of two disjoint directed edges
    const DirectedGraph g1(4, {{1, 2}, {3, 4}, {2, 3}});
    const DirectedGraph g2(4, {{1, 4}, {3, 2}, {2, 3}});
    REQUIRE(suff_stats(g1) == suff_stats(g2));

    const auto rep = fit_p1(g1, {.tol = 1e-10, .max_iter = 5000});
    auto log_lik = [&](const DirectedGraph& g) {
        double ll = 0.0;
        for (int i = 1; i <= g.node_count(); ++i)
            for (int j = i + 1; j <= g.node_count(); ++j)
                ll += std::log(
                    rep.fit.dyad(i, j)[static_cast<std::size_t>(g.dyad_state(i, j))]);
        return ll;
    };
    CHECK(log_lik(g1) == doctest::Approx(log_lik(g2)).epsilon(1e-10));
}
