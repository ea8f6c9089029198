#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fiberwalk/digraph.hpp"

namespace fiberwalk {

// One model parameter. Alpha/Beta/Rho index a node, Lambda a dyad {i,j} with
// i < j; RowX/ColY/LayerZ index the axes of independence-type tables.
struct ParamVertex {
    enum class Kind : std::uint8_t { Alpha, Beta, Rho, Lambda, RowX, ColY, LayerZ };
    Kind kind = Kind::Alpha;
    int i = 0;
    int j = 0; // Lambda only
    auto operator<=>(const ParamVertex&) const = default;
};

std::string to_string(const ParamVertex& v);

ParamVertex alpha_vertex(int i);
ParamVertex beta_vertex(int i);
ParamVertex rho_vertex(int i);
ParamVertex lambda_vertex(int i, int j);
ParamVertex row_vertex(int i);
ParamVertex col_vertex(int j);
ParamVertex layer_vertex(int k);

// A hyperedge, kept sorted.
using HyperEdge = std::vector<ParamVertex>;

std::string to_string(const HyperEdge& e);

// Identifies the table cell an edge represents. For independence models this
// is the cell's multi-index; for dyadic network models it is {i, j, state}.
using CellKey = std::vector<int>;

// Model parameters as vertices, one hyperedge per joint-probability cell.
// The cell <-> edge correspondence is a bijection.
class ParamHypergraph {
public:
    ParamHypergraph() = default;
    ParamHypergraph(std::vector<ParamVertex> vertices, std::vector<HyperEdge> edges,
                    std::vector<CellKey> cells);

    const std::vector<ParamVertex>& vertices() const { return vertices_; }
    const std::vector<HyperEdge>& edges() const { return edges_; }
    const std::vector<CellKey>& cells() const { return cells_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Throws ShapeMismatch when the cell has no edge (e.g. a structural zero).
    const HyperEdge& edge_for_cell(const CellKey& cell) const;
    bool has_cell(const CellKey& cell) const { return cell_index_.count(cell) != 0; }

    // Cell represented by an edge; throws ShapeMismatch for foreign edges.
    const CellKey& cell_for_edge(const HyperEdge& e) const;

private:
    std::vector<ParamVertex> vertices_;
    std::vector<HyperEdge> edges_;
    std::vector<CellKey> cells_;
    std::map<CellKey, std::size_t> cell_index_;
    std::map<HyperEdge, std::size_t> edge_index_;
};

// Hypergraph of the dyad-dependent reciprocation model on n >= 2 nodes:
// singleton edges {l_ij} for empty dyads, {a_i b_j l_ij} for single edges,
// {a_i a_j b_i b_j r_i r_j l_ij} for mutual dyads.
ParamHypergraph p1_hypergraph(int n);

// Complete bipartite hypergraph {x_i y_j} of two independent variables.
ParamHypergraph independence_hypergraph(int rows, int cols);

// Complete 3-partite hypergraph minus the structural-zero cells.
ParamHypergraph quasi_independence_hypergraph(int l, int m, int n,
                                              const std::set<CellKey>& structural_zeros);

// Multiset of hyperedges with multiplicities >= 1.
class EdgeMultiset {
public:
    EdgeMultiset() = default;

    void add(const HyperEdge& e, long long count = 1);
    // Removes count occurrences; throws PreconditionViolation if fewer present.
    void remove(const HyperEdge& e, long long count = 1);

    long long multiplicity(const HyperEdge& e) const;
    long long total() const; // sum of multiplicities
    bool empty() const { return entries_.empty(); }

    const std::map<HyperEdge, long long>& entries() const { return entries_; }

    bool operator==(const EdgeMultiset&) const = default;

private:
    std::map<HyperEdge, long long> entries_;
};

std::string to_string(const EdgeMultiset& ms);

using DegreeVector = std::map<ParamVertex, long long>;

// Per-vertex incidence count weighted by multiplicity.
DegreeVector degree_vector(const EdgeMultiset& ms);

// True iff both multisets cover every vertex equally often.
bool is_balanced(const EdgeMultiset& r, const EdgeMultiset& b);

// Dense nonnegative integer table with 1-based multi-indices.
struct Table {
    std::vector<int> dims;
    std::vector<long long> values;

    Table() = default;
    explicit Table(std::vector<int> d);

    long long& at(const CellKey& idx);
    long long at(const CellKey& idx) const;
    long long total() const;
    bool operator==(const Table&) const = default;
};

// e(u): one edge per nonzero cell, with multiplicity equal to the cell value.
// Throws ShapeMismatch if the table shape does not match the hypergraph or a
// positive entry sits on a missing (structural-zero) cell.
EdgeMultiset table_to_edges(const Table& u, const ParamHypergraph& h);

// e(g) for a dyadic network: each dyad contributes the edge of its state.
EdgeMultiset table_to_edges(const DirectedGraph& g, const ParamHypergraph& h);

} // namespace fiberwalk
