#pragma once

#include <span>
#include <string>
#include <vector>

#include "fiberwalk/digraph.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/hypergraph.hpp"
#include "fiberwalk/p1.hpp"
#include "fiberwalk/sampler.hpp"

namespace fiberwalk {

enum class NetworkFormat { Auto, EdgeList, Pajek };

// Graph plus the original node labels (index 0 = node 1).
struct ParsedNetwork {
    DirectedGraph graph;
    std::vector<std::string> labels;
};

// Reads a network file. Edge lists hold one "i j" pair per line with '#'
// comments; arbitrary labels are remapped to 1..n in order of first
// appearance. Pajek files support *Vertices, *Arcs and *Edges sections
// (undirected *Edges expand to mutual pairs). Auto picks Pajek when the file
// contains a section marker. Errors carry the offending line number.
ParsedNetwork parse_network(const std::string& path, NetworkFormat format = NetworkFormat::Auto);
ParsedNetwork parse_network_text(const std::string& text, NetworkFormat format = NetworkFormat::Auto,
                                 const std::string& name = "<input>");

// Canonical edge-list text: one "i j" per line, sorted, 1..n ids.
std::string serialize_edge_list(const DirectedGraph& g);

// One graph per line as "i,j i,j ..." over the sorted edge list.
std::string fiber_to_text(const Fiber& fiber);

// Whitespace- or comma-separated rows of nonnegative integers.
Table parse_table_text(const std::string& text, const std::string& name = "<input>");
Table parse_table(const std::string& path);

// Fit report as a JSON document (parameters, per-dyad probabilities,
// convergence metadata).
std::string fit_report_json(const FitReport& report, double tol);

// Trace CSV with columns step,chiSquare,accepted,trivial,runningPValue,
// distinctVisited. Deterministic row order and formatting.
std::string trace_csv(const ChainResult& result);

// Histogram CSV with columns bin_lo,bin_hi,count. bins == 0 selects the
// Freedman-Diaconis rule.
std::string histogram_csv(std::span<const double> values, int bins = 0);

// Mixing-diagnostic CSV with columns step,distinctVisited,tvDistance,
// computed by replaying the recorded state sequence.
std::string tv_csv(const ChainResult& result, std::uint64_t fiber_size,
                   std::uint64_t every = 1);

// Fixed-format floating point used by all writers ("%.17g").
std::string format_double(double x);

} // namespace fiberwalk
