#include <doctest.h>

#include <algorithm>

#include "fiberwalk/digraph.hpp"
#include "fiberwalk/errors.hpp"
#include "fiberwalk/rng.hpp"

using namespace fiberwalk;

namespace {

DirectedGraph make(int n, std::vector<Edge> edges) { return DirectedGraph(n, std::move(edges)); }

DirectedGraph random_graph(int n, double density, Rng& rng) {
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && rng.uniform01() < density) edges.push_back({i, j});
    return DirectedGraph(n, std::move(edges));
}

} // namespace

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(make(2, {{1, 1}}), SelfLoop);
    CHECK_THROWS_AS(make(2, {{1, 2}, {1, 2}}), DuplicateEdge);
    CHECK_THROWS_AS(make(2, {{1, 3}}), PreconditionViolation);
    const auto g = make(3, {{2, 1}, {1, 2}});
    CHECK(g.edges() == std::vector<Edge>{{1, 2}, {2, 1}});
    CHECK(g.dyad_state(1, 2) == DyadState::Mutual);
    CHECK(g.dyad_state(1, 3) == DyadState::Null);
}

TEST_CASE("decompose splits reciprocated and unreciprocated parts") {
    const auto g = make(3, {{1, 2}, {2, 1}, {3, 1}});
    const auto parts = decompose(g);
    CHECK(parts.reciprocated.edges() == std::vector<Edge>{{1, 2}, {2, 1}});
    CHECK(parts.unreciprocated.edges() == std::vector<Edge>{{3, 1}});

    const auto empty = decompose(make(3, {}));
    CHECK(empty.reciprocated.edge_count() == 0);
    CHECK(empty.unreciprocated.edge_count() == 0);

    const auto cycle = decompose(make(3, {{1, 2}, {2, 3}, {3, 1}}));
    CHECK(cycle.reciprocated.edge_count() == 0);
    CHECK(cycle.unreciprocated.edge_count() == 3);
}

TEST_CASE("undir and recip") {
    CHECK(undir(make(2, {{1, 2}, {2, 1}})) == std::vector<NodePair>{{1, 2}});
    CHECK(undir(make(3, {{3, 1}})) == std::vector<NodePair>{{1, 3}});
    CHECK(undir(make(3, {})).empty());

    CHECK(recip(std::vector<NodePair>{{1, 2}}) == std::vector<Edge>{{1, 2}, {2, 1}});
    CHECK(recip(std::vector<NodePair>{{1, 2}, {3, 4}}).size() == 4);
    CHECK(recip(std::vector<NodePair>{}).empty());
}

TEST_CASE("sufficient statistics") {
    const auto g = make(3, {{1, 2}, {2, 1}, {3, 1}});
    const auto s = suff_stats(g);
    CHECK(s.out_degree == std::vector<int>{1, 1, 1});
    CHECK(s.in_degree == std::vector<int>{2, 1, 0});
    CHECK(s.recip_degree == std::vector<int>{1, 1, 0});

    const auto zero = suff_stats(make(4, {}));
    CHECK(zero.out_degree == std::vector<int>{0, 0, 0, 0});
    CHECK(zero.in_degree == std::vector<int>{0, 0, 0, 0});
    CHECK(zero.recip_degree == std::vector<int>{0, 0, 0, 0});

    // complete mutual graph: every degree is n-1
    const int n = 5;
    std::vector<Edge> all;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) all.push_back({i, j});
    const auto full = suff_stats(make(n, std::move(all)));
    for (int v = 0; v < n; ++v) {
        CHECK(full.out_degree[v] == n - 1);
        CHECK(full.in_degree[v] == n - 1);
        CHECK(full.recip_degree[v] == n - 1);
    }
}

TEST_CASE("apply_move") {
    const auto g = make(4, {{1, 2}, {3, 4}});

    SUBCASE("identity move") {
        CHECK(apply_move(g, Move{}) == g);
    }
    SUBCASE("swap preserving statistics") {
        const Move m{{{1, 2}, {3, 4}}, {{1, 4}, {3, 2}}};
        const auto out = apply_move(g, m);
        CHECK(out.edges() == std::vector<Edge>{{1, 4}, {3, 2}});
        CHECK(suff_stats(out) == suff_stats(g));
    }
    SUBCASE("missing removed edge") {
        CHECK_THROWS_AS(apply_move(g, Move{{{2, 1}}, {}}), PreconditionViolation);
    }
    SUBCASE("colliding added edge") {
        CHECK_THROWS_AS(apply_move(g, Move{{}, {{1, 2}}}), PreconditionViolation);
    }
    SUBCASE("statistics mismatch is caught") {
        CHECK_THROWS_AS(apply_move(g, Move{{{1, 2}}, {{2, 3}}}), StatMismatch);
    }
}

TEST_CASE("decompose is a partition and recip(undir) restores the reciprocated part") {
    Rng rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(2, 12);
        const auto g = random_graph(n, rng.uniform01() * 0.6, rng);
        const auto parts = decompose(g);

        std::vector<Edge> merged = parts.reciprocated.edges();
        const auto& un = parts.unreciprocated.edges();
        merged.insert(merged.end(), un.begin(), un.end());
        std::sort(merged.begin(), merged.end());
        CHECK(merged == g.edges());

        std::vector<Edge> overlap;
        std::set_intersection(parts.reciprocated.edges().begin(), parts.reciprocated.edges().end(),
                              un.begin(), un.end(), std::back_inserter(overlap));
        CHECK(overlap.empty());

        CHECK(recip(undir(parts.reciprocated)) == parts.reciprocated.edges());
    }
}
