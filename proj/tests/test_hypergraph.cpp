#include <doctest.h>

#include "fiberwalk/errors.hpp"
#include "fiberwalk/hypergraph.hpp"
#include "fiberwalk/rng.hpp"

using namespace fiberwalk;

TEST_CASE("p1 hypergraph structure") {
    SUBCASE("n=2 written out") {
        const auto h = p1_hypergraph(2);
        CHECK(h.vertex_count() == 7);
        REQUIRE(h.edge_count() == 4);
        CHECK(h.edge_for_cell({1, 2, 0}) == HyperEdge{lambda_vertex(1, 2)});
        CHECK(h.edge_for_cell({1, 2, 1}) ==
              HyperEdge{alpha_vertex(1), beta_vertex(2), lambda_vertex(1, 2)});
        CHECK(h.edge_for_cell({1, 2, 2}) ==
              HyperEdge{alpha_vertex(2), beta_vertex(1), lambda_vertex(1, 2)});
        HyperEdge mutual{alpha_vertex(1), alpha_vertex(2), beta_vertex(1), beta_vertex(2),
                         rho_vertex(1), rho_vertex(2), lambda_vertex(1, 2)};
        std::sort(mutual.begin(), mutual.end());
        CHECK(h.edge_for_cell({1, 2, 3}) == mutual);
    }
    SUBCASE("n=3 counts") {
        const auto h = p1_hypergraph(3);
        CHECK(h.vertex_count() == 12); // 3n + C(n,2)
        CHECK(h.edge_count() == 12);   // 3 + 6 + 3
        int singles = 0, triples = 0, sevens = 0;
        for (const auto& e : h.edges()) {
            if (e.size() == 1) singles++;
            if (e.size() == 3) triples++;
            if (e.size() == 7) sevens++;
        }
        CHECK(singles == 3);
        CHECK(triples == 6);
        CHECK(sevens == 3);
    }
    SUBCASE("too small") { CHECK_THROWS_AS(p1_hypergraph(1), InvalidSize); }
}

TEST_CASE("independence hypergraph is complete bipartite") {
    CHECK(independence_hypergraph(2, 2).edge_count() == 4);
    CHECK(independence_hypergraph(5, 5).edge_count() == 25);
    const auto h = independence_hypergraph(2, 3);
    CHECK(h.edge_count() == 6);
    CHECK(h.vertex_count() == 5);
    CHECK(h.edge_for_cell({2, 3}) == HyperEdge{row_vertex(2), col_vertex(3)});
}

TEST_CASE("quasi-independence hypergraph removes structural zeros") {
    SUBCASE("all-but-six zeros") {
        // every cell is a structural zero except the six listed
        std::set<CellKey> zeros;
        const std::set<CellKey> keep{{1, 1, 1}, {1, 1, 2}, {2, 2, 2},
                                     {2, 3, 3}, {3, 2, 1}, {3, 3, 3}};
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k)
                    if (!keep.count({i, j, k})) zeros.insert({i, j, k});
        const auto h = quasi_independence_hypergraph(3, 3, 3, zeros);
        CHECK(h.edge_count() == 6);
        CHECK(h.has_cell({2, 3, 3}));
        CHECK(!h.has_cell({1, 2, 1}));
    }
    SUBCASE("no zeros") {
        CHECK(quasi_independence_hypergraph(2, 3, 4, {}).edge_count() == 24);
    }
    SUBCASE("everything zero") {
        std::set<CellKey> zeros;
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k) zeros.insert({i, j, k});
        CHECK(quasi_independence_hypergraph(2, 2, 2, zeros).edge_count() == 0);
    }
}

TEST_CASE("table_to_edges") {
    SUBCASE("2x2 with entries 1 and 2") {
        Table u({2, 2});
        u.at({1, 2}) = 1;
        u.at({2, 1}) = 2;
        const auto ms = table_to_edges(u, independence_hypergraph(2, 2));
        CHECK(ms.total() == 3);
        CHECK(ms.multiplicity({row_vertex(1), col_vertex(2)}) == 1);
        CHECK(ms.multiplicity({row_vertex(2), col_vertex(1)}) == 2);
    }
    SUBCASE("the 5x5 table with 11 entries") {
        Table u({5, 5});
        u.at({1, 1}) = 3;
        u.at({1, 2}) = 2;
        u.at({1, 4}) = 1;
        u.at({2, 1}) = 1;
        u.at({2, 5}) = 1;
        u.at({3, 4}) = 2;
        u.at({4, 2}) = 1;
        const auto ms = table_to_edges(u, independence_hypergraph(5, 5));
        CHECK(ms.total() == 11);
        CHECK(ms.multiplicity({row_vertex(1), col_vertex(1)}) == 3);
        CHECK(ms.multiplicity({row_vertex(1), col_vertex(2)}) == 2);
        CHECK(ms.multiplicity({row_vertex(1), col_vertex(4)}) == 1);
        CHECK(ms.multiplicity({row_vertex(2), col_vertex(1)}) == 1);
        CHECK(ms.multiplicity({row_vertex(2), col_vertex(5)}) == 1);
        CHECK(ms.multiplicity({row_vertex(3), col_vertex(4)}) == 2);
        CHECK(ms.multiplicity({row_vertex(4), col_vertex(2)}) == 1);
    }
    SUBCASE("null dyad maps to the singleton") {
        const auto h = p1_hypergraph(2);
        const auto ms = table_to_edges(DirectedGraph(2, {}), h);
        CHECK(ms.total() == 1);
        CHECK(ms.multiplicity({lambda_vertex(1, 2)}) == 1);
    }
    SUBCASE("positive entry on a structural zero") {
        std::set<CellKey> zeros{{1, 1, 1}};
        const auto h = quasi_independence_hypergraph(2, 2, 2, zeros);
        Table u({2, 2, 2});
        u.at({1, 1, 1}) = 1;
        CHECK_THROWS_AS(table_to_edges(u, h), ShapeMismatch);
    }
}

TEST_CASE("degree vector") {
    EdgeMultiset ms;
    ms.add({row_vertex(1), col_vertex(2)});
    ms.add({row_vertex(2), col_vertex(1)}, 2);
    const auto deg = degree_vector(ms);
    CHECK(deg.at(row_vertex(1)) == 1);
    CHECK(deg.at(row_vertex(2)) == 2);
    CHECK(deg.at(col_vertex(1)) == 2);
    CHECK(deg.at(col_vertex(2)) == 1);
    CHECK(degree_vector(EdgeMultiset{}).empty());
}

TEST_CASE("is_balanced") {
    EdgeMultiset r, b;
    r.add({row_vertex(1), col_vertex(1)});
    r.add({row_vertex(2), col_vertex(2)});
    b.add({row_vertex(1), col_vertex(2)});
    b.add({row_vertex(2), col_vertex(1)});
    CHECK(is_balanced(r, b));
    CHECK(is_balanced(r, r));

    EdgeMultiset r2, b2;
    r2.add({row_vertex(1), col_vertex(1)});
    b2.add({row_vertex(1), col_vertex(2)});
    CHECK(!is_balanced(r2, b2));
}

TEST_CASE("network multiset agrees with sufficient statistics") {
    Rng rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(2, 8);
        std::vector<Edge> edges;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j && rng.uniform01() < 0.4) edges.push_back({i, j});
        const DirectedGraph g(n, std::move(edges));
        const auto h = p1_hypergraph(n);
        const auto ms = table_to_edges(g, h);

        // one edge per dyad
        CHECK(ms.total() == dyad_count(n));

        const auto deg = degree_vector(ms);
        const auto stats = suff_stats(g);
        auto deg_of = [&](const ParamVertex& v) {
            auto it = deg.find(v);
            return it == deg.end() ? 0LL : it->second;
        };
        for (int v = 1; v <= n; ++v) {
            CHECK(deg_of(alpha_vertex(v)) == stats.out_degree[v - 1]);
            CHECK(deg_of(beta_vertex(v)) == stats.in_degree[v - 1]);
            CHECK(deg_of(rho_vertex(v)) == stats.recip_degree[v - 1]);
        }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) CHECK(deg_of(lambda_vertex(i, j)) == 1);
    }
}

TEST_CASE("balance characterizes equal margins on small tables") {
    // brute force over pairs of 2x2 tables with total 3
    const auto h = independence_hypergraph(2, 2);
    std::vector<Table> tables;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3 - a; ++b)
            for (int c = 0; c <= 3 - a - b; ++c) {
                Table t({2, 2});
                t.at({1, 1}) = a;
                t.at({1, 2}) = b;
                t.at({2, 1}) = c;
                t.at({2, 2}) = 3 - a - b - c;
                tables.push_back(t);
            }
    auto margins = [](const Table& t) {
        return std::vector<long long>{t.at({1, 1}) + t.at({1, 2}), t.at({2, 1}) + t.at({2, 2}),
                                      t.at({1, 1}) + t.at({2, 1}), t.at({1, 2}) + t.at({2, 2})};
    };
    for (const auto& u : tables)
        for (const auto& v : tables) {
            const bool balanced = is_balanced(table_to_edges(u, h), table_to_edges(v, h));
            CHECK(balanced == (margins(u) == margins(v)));
        }
}
