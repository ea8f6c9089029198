#include "fiberwalk/hypergraph.hpp"

#include <algorithm>
#include <numeric>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

ParamVertex alpha_vertex(int i) { return {ParamVertex::Kind::Alpha, i, 0}; }
ParamVertex beta_vertex(int i) { return {ParamVertex::Kind::Beta, i, 0}; }
ParamVertex rho_vertex(int i) { return {ParamVertex::Kind::Rho, i, 0}; }
ParamVertex lambda_vertex(int i, int j) {
    return {ParamVertex::Kind::Lambda, std::min(i, j), std::max(i, j)};
}
ParamVertex row_vertex(int i) { return {ParamVertex::Kind::RowX, i, 0}; }
ParamVertex col_vertex(int j) { return {ParamVertex::Kind::ColY, j, 0}; }
ParamVertex layer_vertex(int k) { return {ParamVertex::Kind::LayerZ, k, 0}; }

std::string to_string(const ParamVertex& v) {
    switch (v.kind) {
        case ParamVertex::Kind::Alpha: return "a" + std::to_string(v.i);
        case ParamVertex::Kind::Beta: return "b" + std::to_string(v.i);
        case ParamVertex::Kind::Rho: return "r" + std::to_string(v.i);
        case ParamVertex::Kind::Lambda:
            return "l{" + std::to_string(v.i) + "," + std::to_string(v.j) + "}";
        case ParamVertex::Kind::RowX: return "x" + std::to_string(v.i);
        case ParamVertex::Kind::ColY: return "y" + std::to_string(v.i);
        case ParamVertex::Kind::LayerZ: return "z" + std::to_string(v.i);
    }
    return "?";
}

std::string to_string(const HyperEdge& e) {
    std::string s;
    for (const ParamVertex& v : e) s += to_string(v);
    return s;
}

ParamHypergraph::ParamHypergraph(std::vector<ParamVertex> vertices, std::vector<HyperEdge> edges,
                                 std::vector<CellKey> cells)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), cells_(std::move(cells)) {
    if (edges_.size() != cells_.size())
        throw ShapeMismatch("edge and cell lists differ in length");
    std::sort(vertices_.begin(), vertices_.end());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        HyperEdge& e = edges_[k];
        std::sort(e.begin(), e.end());
        if (e.empty()) throw ShapeMismatch("empty hyperedge");
        for (const ParamVertex& v : e)
            if (!std::binary_search(vertices_.begin(), vertices_.end(), v))
                throw ShapeMismatch("hyperedge vertex not in vertex set: " + to_string(v));
        if (!cell_index_.emplace(cells_[k], k).second)
            throw ShapeMismatch("duplicate cell key");
        if (!edge_index_.emplace(e, k).second)
            throw ShapeMismatch("duplicate hyperedge; cell map would not be a bijection");
    }
}

const HyperEdge& ParamHypergraph::edge_for_cell(const CellKey& cell) const {
    auto it = cell_index_.find(cell);
    if (it == cell_index_.end()) throw ShapeMismatch("no edge for the requested cell");
    return edges_[it->second];
}

const CellKey& ParamHypergraph::cell_for_edge(const HyperEdge& e) const {
    HyperEdge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    auto it = edge_index_.find(sorted);
    if (it == edge_index_.end()) throw ShapeMismatch("edge does not belong to the hypergraph");
    return cells_[it->second];
}

ParamHypergraph p1_hypergraph(int n) {
    if (n < 2) throw InvalidSize("dyadic model needs at least 2 nodes");
    std::vector<ParamVertex> vertices;
    for (int i = 1; i <= n; ++i) {
        vertices.push_back(alpha_vertex(i));
        vertices.push_back(beta_vertex(i));
        vertices.push_back(rho_vertex(i));
    }
    std::vector<HyperEdge> edges;
    std::vector<CellKey> cells;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            vertices.push_back(lambda_vertex(i, j));
            // One edge per dyad state, keyed {i, j, state}.
            edges.push_back({lambda_vertex(i, j)});
            cells.push_back({i, j, static_cast<int>(DyadState::Null)});
            edges.push_back({alpha_vertex(i), beta_vertex(j), lambda_vertex(i, j)});
            cells.push_back({i, j, static_cast<int>(DyadState::Out)});
            edges.push_back({alpha_vertex(j), beta_vertex(i), lambda_vertex(i, j)});
            cells.push_back({i, j, static_cast<int>(DyadState::In)});
            edges.push_back({alpha_vertex(i), alpha_vertex(j), beta_vertex(i), beta_vertex(j),
                             rho_vertex(i), rho_vertex(j), lambda_vertex(i, j)});
            cells.push_back({i, j, static_cast<int>(DyadState::Mutual)});
        }
    }
    return ParamHypergraph(std::move(vertices), std::move(edges), std::move(cells));
}

ParamHypergraph independence_hypergraph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InvalidSize("table dimensions must be positive");
    std::vector<ParamVertex> vertices;
    for (int i = 1; i <= rows; ++i) vertices.push_back(row_vertex(i));
    for (int j = 1; j <= cols; ++j) vertices.push_back(col_vertex(j));
    std::vector<HyperEdge> edges;
    std::vector<CellKey> cells;
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j) {
            edges.push_back({row_vertex(i), col_vertex(j)});
            cells.push_back({i, j});
        }
    return ParamHypergraph(std::move(vertices), std::move(edges), std::move(cells));
}

ParamHypergraph quasi_independence_hypergraph(int l, int m, int n,
                                              const std::set<CellKey>& structural_zeros) {
    if (l < 1 || m < 1 || n < 1) throw InvalidSize("table dimensions must be positive");
    std::vector<ParamVertex> vertices;
    for (int i = 1; i <= l; ++i) vertices.push_back(row_vertex(i));
    for (int j = 1; j <= m; ++j) vertices.push_back(col_vertex(j));
    for (int k = 1; k <= n; ++k) vertices.push_back(layer_vertex(k));
    std::vector<HyperEdge> edges;
    std::vector<CellKey> cells;
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= n; ++k) {
                if (structural_zeros.count({i, j, k})) continue;
                edges.push_back({row_vertex(i), col_vertex(j), layer_vertex(k)});
                cells.push_back({i, j, k});
            }
    return ParamHypergraph(std::move(vertices), std::move(edges), std::move(cells));
}

void EdgeMultiset::add(const HyperEdge& e, long long count) {
    if (count < 0) throw PreconditionViolation("negative multiplicity");
    if (count == 0) return;
    HyperEdge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    entries_[sorted] += count;
}

void EdgeMultiset::remove(const HyperEdge& e, long long count) {
    HyperEdge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    auto it = entries_.find(sorted);
    if (it == entries_.end() || it->second < count)
        throw PreconditionViolation("removing more copies than present: " + to_string(sorted));
    it->second -= count;
    if (it->second == 0) entries_.erase(it);
}

long long EdgeMultiset::multiplicity(const HyperEdge& e) const {
    HyperEdge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    auto it = entries_.find(sorted);
    return it == entries_.end() ? 0 : it->second;
}

long long EdgeMultiset::total() const {
    long long t = 0;
    for (const auto& [e, c] : entries_) t += c;
    return t;
}

std::string to_string(const EdgeMultiset& ms) {
    std::string s = "{";
    bool first = true;
    for (const auto& [e, c] : ms.entries()) {
        for (long long k = 0; k < c; ++k) {
            if (!first) s += ", ";
            s += to_string(e);
            first = false;
        }
    }
    s += "}";
    return s;
}

DegreeVector degree_vector(const EdgeMultiset& ms) {
    DegreeVector deg;
    for (const auto& [e, c] : ms.entries())
        for (const ParamVertex& v : e) deg[v] += c;
    return deg;
}

bool is_balanced(const EdgeMultiset& r, const EdgeMultiset& b) {
    return degree_vector(r) == degree_vector(b);
}

Table::Table(std::vector<int> d) : dims(std::move(d)) {
    std::size_t total = 1;
    for (int x : dims) {
        if (x < 1) throw InvalidSize("table dimensions must be positive");
        total *= static_cast<std::size_t>(x);
    }
    values.assign(total, 0);
}

namespace {

std::size_t flat_index(const Table& t, const CellKey& idx) {
    if (idx.size() != t.dims.size()) throw ShapeMismatch("cell index has wrong arity");
    std::size_t flat = 0;
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (idx[d] < 1 || idx[d] > t.dims[d]) throw ShapeMismatch("cell index out of range");
        flat = flat * static_cast<std::size_t>(t.dims[d]) + static_cast<std::size_t>(idx[d] - 1);
    }
    return flat;
}

} // namespace

long long& Table::at(const CellKey& idx) { return values[flat_index(*this, idx)]; }
long long Table::at(const CellKey& idx) const { return values[flat_index(*this, idx)]; }

long long Table::total() const { return std::accumulate(values.begin(), values.end(), 0LL); }

EdgeMultiset table_to_edges(const Table& u, const ParamHypergraph& h) {
    EdgeMultiset ms;
    CellKey idx(u.dims.size(), 1);
    for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
        long long v = u.values[flat];
        if (v < 0) throw ShapeMismatch("negative table entry");
        if (v > 0) {
            if (!h.has_cell(idx))
                throw ShapeMismatch("positive entry on a cell absent from the hypergraph");
            ms.add(h.edge_for_cell(idx), v);
        }
        // advance the multi-index, last axis fastest
        for (std::size_t d = idx.size(); d-- > 0;) {
            if (++idx[d] <= u.dims[d]) break;
            idx[d] = 1;
        }
    }
    return ms;
}

EdgeMultiset table_to_edges(const DirectedGraph& g, const ParamHypergraph& h) {
    EdgeMultiset ms;
    int n = g.node_count();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            ms.add(h.edge_for_cell({i, j, static_cast<int>(g.dyad_state(i, j))}));
    return ms;
}

} // namespace fiberwalk
