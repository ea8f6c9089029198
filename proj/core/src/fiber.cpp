#include "fiberwalk/fiber.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

namespace {

bool key_less(const DirectedGraph& g, const GraphKey& key) { return g.edges() < key; }

} // namespace

bool Fiber::contains(const GraphKey& key) const { return index_of(key) >= 0; }

long long Fiber::index_of(const GraphKey& key) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), key, key_less);
    if (it == elements.end() || it->edges() != key) return -1;
    return it - elements.begin();
}

Fiber enumerate_fiber(const DirectedGraph& g, int max_dyads) {
    const int n = g.node_count();
    const int dyads = dyad_count(n);
    if (dyads > max_dyads) throw TooLarge("graph exceeds the dyad guard for enumeration");

    Fiber fiber;
    fiber.stats = suff_stats(g);
    fiber.node_count = n;

    // residual degrees still to realize, and undecided dyads per node
    std::vector<int> ro = fiber.stats.out_degree;
    std::vector<int> ri = fiber.stats.in_degree;
    std::vector<int> rr = fiber.stats.recip_degree;
    std::vector<int> avail(static_cast<std::size_t>(n), n - 1);

    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<std::size_t>(dyads));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) order.emplace_back(i, j);

    std::vector<DyadState> chosen(static_cast<std::size_t>(dyads));

    auto feasible = [&](int v) {
        const auto u = static_cast<std::size_t>(v - 1);
        return ro[u] >= 0 && ri[u] >= 0 && rr[u] >= 0 && rr[u] <= std::min(ro[u], ri[u]) &&
               ro[u] + ri[u] - rr[u] <= avail[u];
    };

    std::function<void(int)> dfs = [&](int d) {
        if (d == dyads) {
            std::vector<Edge> edges;
            for (int t = 0; t < dyads; ++t) {
                const auto [i, j] = order[static_cast<std::size_t>(t)];
                const DyadState s = chosen[static_cast<std::size_t>(t)];
                if (s == DyadState::Out || s == DyadState::Mutual) edges.push_back({i, j});
                if (s == DyadState::In || s == DyadState::Mutual) edges.push_back({j, i});
            }
            fiber.elements.emplace_back(n, std::move(edges));
            return;
        }
        const auto [i, j] = order[static_cast<std::size_t>(d)];
        const auto ui = static_cast<std::size_t>(i - 1), uj = static_cast<std::size_t>(j - 1);
        avail[ui]--;
        avail[uj]--;
        for (int s = 0; s < 4; ++s) {
            const auto ds = static_cast<DyadState>(s);
            switch (ds) {
                case DyadState::Null: break;
                case DyadState::Out: ro[ui]--; ri[uj]--; break;
                case DyadState::In: ro[uj]--; ri[ui]--; break;
                case DyadState::Mutual:
                    ro[ui]--; ri[ui]--; rr[ui]--;
                    ro[uj]--; ri[uj]--; rr[uj]--;
                    break;
            }
            if (feasible(i) && feasible(j)) {
                chosen[static_cast<std::size_t>(d)] = ds;
                dfs(d + 1);
            }
            switch (ds) {
                case DyadState::Null: break;
                case DyadState::Out: ro[ui]++; ri[uj]++; break;
                case DyadState::In: ro[uj]++; ri[ui]++; break;
                case DyadState::Mutual:
                    ro[ui]++; ri[ui]++; rr[ui]++;
                    ro[uj]++; ri[uj]++; rr[uj]++;
                    break;
            }
        }
        avail[ui]++;
        avail[uj]++;
    };
    dfs(0);

    std::sort(fiber.elements.begin(), fiber.elements.end(),
              [](const DirectedGraph& a, const DirectedGraph& b) { return a.edges() < b.edges(); });
    return fiber;
}

namespace {

bool erdos_gallai(std::vector<int> d) {
    std::sort(d.begin(), d.end(), std::greater<>());
    const long long n = static_cast<long long>(d.size());
    long long prefix = 0;
    for (long long k = 1; k <= n; ++k) {
        prefix += d[static_cast<std::size_t>(k - 1)];
        long long bound = k * (k - 1);
        for (long long i = k; i < n; ++i)
            bound += std::min<long long>(d[static_cast<std::size_t>(i)], k);
        if (prefix > bound) return false;
    }
    return true;
}

} // namespace

Fiber enumerate_undirected_fiber(std::span<const int> degrees, int max_nodes) {
    const int n = static_cast<int>(degrees.size());
    if (n > max_nodes) throw TooLarge("degree sequence exceeds the node guard");
    long long sum = 0;
    for (int d : degrees) {
        if (d < 0 || d > n - 1) throw Infeasible("degree outside [0, n-1]");
        sum += d;
    }
    if (sum % 2 != 0) throw Infeasible("odd degree sum");
    if (!erdos_gallai(std::vector<int>(degrees.begin(), degrees.end())))
        throw Infeasible("degree sequence is not graphical");

    Fiber fiber;
    fiber.node_count = n;

    std::vector<int> resid(degrees.begin(), degrees.end());
    std::vector<int> avail(static_cast<std::size_t>(n), n - 1);
    std::vector<std::pair<int, int>> order;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) order.emplace_back(i, j);
    const int pairs = static_cast<int>(order.size());
    std::vector<bool> take(static_cast<std::size_t>(pairs));

    auto feasible = [&](int v) {
        const auto u = static_cast<std::size_t>(v - 1);
        return resid[u] >= 0 && resid[u] <= avail[u];
    };

    std::function<void(int)> dfs = [&](int d) {
        if (d == pairs) {
            std::vector<Edge> edges;
            for (int t = 0; t < pairs; ++t)
                if (take[static_cast<std::size_t>(t)]) {
                    const auto [i, j] = order[static_cast<std::size_t>(t)];
                    edges.push_back({i, j});
                    edges.push_back({j, i});
                }
            fiber.elements.emplace_back(n, std::move(edges));
            return;
        }
        const auto [i, j] = order[static_cast<std::size_t>(d)];
        const auto ui = static_cast<std::size_t>(i - 1), uj = static_cast<std::size_t>(j - 1);
        avail[ui]--;
        avail[uj]--;
        for (bool edge : {false, true}) {
            if (edge) { resid[ui]--; resid[uj]--; }
            if (feasible(i) && feasible(j)) {
                take[static_cast<std::size_t>(d)] = edge;
                dfs(d + 1);
            }
            if (edge) { resid[ui]++; resid[uj]++; }
        }
        avail[ui]++;
        avail[uj]++;
    };
    dfs(0);

    std::sort(fiber.elements.begin(), fiber.elements.end(),
              [](const DirectedGraph& a, const DirectedGraph& b) { return a.edges() < b.edges(); });
    if (!fiber.elements.empty()) fiber.stats = suff_stats(fiber.elements.front());
    return fiber;
}

Coverage coverage(const ChainResult& result, const Fiber& fiber) {
    if (result.visit_histogram.empty())
        throw PreconditionViolation("chain did not track visited states");
    Coverage cov;
    for (const auto& [key, count] : result.visit_histogram) {
        if (!fiber.contains(key))
            throw OracleViolation("visited state outside the enumerated fiber");
        cov.visited++;
    }
    cov.missing = fiber.size() - cov.visited;
    return cov;
}

} // namespace fiberwalk
