#include "fiberwalk/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

[[noreturn]] void parse_fail(const std::string& name, std::size_t lineno, const std::string& what) {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + what);
}

int parse_int(const std::string& tok, const std::string& name, std::size_t lineno) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) parse_fail(name, lineno, "not an integer: '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(name, lineno, "not an integer: '" + tok + "'");
    }
}

ParsedNetwork parse_edge_list(const std::string& text, const std::string& name) {
    std::map<std::string, int> ids;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;

    auto node_id = [&](const std::string& label) {
        auto [it, inserted] = ids.emplace(label, static_cast<int>(ids.size()) + 1);
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = split_ws(strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() != 2) parse_fail(name, lineno, "expected 'i j'");
        const int a = node_id(toks[0]);
        const int b = node_id(toks[1]);
        if (a == b) throw SelfLoop(name + ":" + std::to_string(lineno) + ": self loop '" +
                                   toks[0] + " " + toks[1] + "'");
        edges.push_back({a, b});
        edge_lines.push_back(lineno);
    }
    // report duplicates with their line number before handing off
    {
        std::map<std::pair<int, int>, std::size_t> seen;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            auto [it, inserted] = seen.emplace(std::pair{edges[k].from, edges[k].to}, edge_lines[k]);
            if (!inserted)
                throw DuplicateEdge(name + ":" + std::to_string(edge_lines[k]) +
                                    ": duplicate edge (first at line " + std::to_string(it->second) +
                                    ")");
        }
    }
    return {DirectedGraph(static_cast<int>(labels.size()), std::move(edges)), std::move(labels)};
}

ParsedNetwork parse_pajek(const std::string& text, const std::string& name) {
    enum class Section { None, Vertices, Arcs, Edges };
    Section section = Section::None;
    int n = -1;
    std::vector<std::string> labels;
    std::vector<Edge> edges;

    auto check_node = [&](int v, std::size_t lineno) {
        if (n < 0) parse_fail(name, lineno, "edge before *Vertices section");
        if (v < 1 || v > n) parse_fail(name, lineno, "vertex id out of range: " + std::to_string(v));
    };
    auto add_edge = [&](Edge e, std::size_t lineno) {
        if (std::find(edges.begin(), edges.end(), e) != edges.end())
            throw DuplicateEdge(name + ":" + std::to_string(lineno) + ": duplicate edge (" +
                                std::to_string(e.from) + "," + std::to_string(e.to) + ")");
        edges.push_back(e);
    };

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '%') continue;
        if (trimmed[0] == '*') {
            const auto toks = split_ws(trimmed);
            const std::string head = lower(toks[0]);
            if (head == "*vertices") {
                if (toks.size() < 2) parse_fail(name, lineno, "*Vertices needs a count");
                n = parse_int(toks[1], name, lineno);
                if (n < 0) parse_fail(name, lineno, "negative vertex count");
                labels.assign(static_cast<std::size_t>(n), "");
                for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = std::to_string(v + 1);
                section = Section::Vertices;
            } else if (head == "*arcs") {
                section = Section::Arcs;
            } else if (head == "*edges") {
                section = Section::Edges;
            } else {
                parse_fail(name, lineno, "unsupported section '" + toks[0] + "'");
            }
            continue;
        }
        const auto toks = split_ws(trimmed);
        switch (section) {
            case Section::None:
                parse_fail(name, lineno, "content before any section header");
            case Section::Vertices: {
                const int v = parse_int(toks[0], name, lineno);
                check_node(v, lineno);
                if (toks.size() > 1) {
                    std::string label = trimmed.substr(trimmed.find(toks[1]));
                    if (label.size() >= 2 && label.front() == '"') {
                        const auto close = label.find('"', 1);
                        label = label.substr(1, close == std::string::npos ? label.size() - 1
                                                                           : close - 1);
                    }
                    labels[static_cast<std::size_t>(v - 1)] = label;
                }
                break;
            }
            case Section::Arcs:
            case Section::Edges: {
                if (toks.size() < 2) parse_fail(name, lineno, "expected 'i j'");
                const int a = parse_int(toks[0], name, lineno);
                const int b = parse_int(toks[1], name, lineno);
                check_node(a, lineno);
                check_node(b, lineno);
                if (a == b)
                    throw SelfLoop(name + ":" + std::to_string(lineno) + ": self loop");
                add_edge({a, b}, lineno);
                if (section == Section::Edges) add_edge({b, a}, lineno);
                break;
            }
        }
    }
    if (n < 0) parse_fail(name, lineno == 0 ? 1 : lineno, "missing *Vertices section");
    return {DirectedGraph(n, std::move(edges)), std::move(labels)};
}

bool looks_like_pajek(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] == '*') return true;
    }
    return false;
}

} // namespace

ParsedNetwork parse_network_text(const std::string& text, NetworkFormat format,
                                 const std::string& name) {
    if (format == NetworkFormat::Auto)
        format = looks_like_pajek(text) ? NetworkFormat::Pajek : NetworkFormat::EdgeList;
    return format == NetworkFormat::Pajek ? parse_pajek(text, name) : parse_edge_list(text, name);
}

ParsedNetwork parse_network(const std::string& path, NetworkFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_network_text(buf.str(), format, path);
}

std::string serialize_edge_list(const DirectedGraph& g) {
    std::string out;
    for (const Edge& e : g.edges())
        out += std::to_string(e.from) + " " + std::to_string(e.to) + "\n";
    return out;
}

std::string fiber_to_text(const Fiber& fiber) {
    std::string out;
    for (const DirectedGraph& g : fiber.elements) {
        bool first = true;
        for (const Edge& e : g.edges()) {
            if (!first) out += " ";
            out += std::to_string(e.from) + "," + std::to_string(e.to);
            first = false;
        }
        out += "\n";
    }
    return out;
}

Table parse_table_text(const std::string& text, const std::string& name) {
    std::vector<std::vector<long long>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string clean = strip_comment(line);
        std::replace(clean.begin(), clean.end(), ',', ' ');
        const auto toks = split_ws(clean);
        if (toks.empty()) continue;
        std::vector<long long> row;
        for (const auto& tok : toks) {
            const int v = parse_int(tok, name, lineno);
            if (v < 0) parse_fail(name, lineno, "negative table entry");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            parse_fail(name, lineno, "ragged table row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(name + ": empty table");
    Table t({static_cast<int>(rows.size()), static_cast<int>(rows.front().size())});
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            t.at({static_cast<int>(i) + 1, static_cast<int>(j) + 1}) = rows[i][j];
    return t;
}

Table parse_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_table_text(buf.str(), path);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fit_report_json(const FitReport& report, double tol) {
    nlohmann::json j;
    j["n"] = report.params.n;
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["maxStatResidual"] = report.max_stat_residual;
    j["tol"] = tol;
    j["alpha"] = report.params.alpha;
    j["beta"] = report.params.beta;
    j["rho"] = report.params.rho;
    j["lambda"] = report.params.lambda;
    nlohmann::json dyads = nlohmann::json::array();
    const int n = report.params.n;
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k) {
            const DyadProbs& p = report.fit.dyad(i, k);
            nlohmann::json d;
            d["i"] = i;
            d["j"] = k;
            d["p00"] = p[0];
            d["p10"] = p[1];
            d["p01"] = p[2];
            d["p11"] = p[3];
            dyads.push_back(d);
        }
    j["dyads"] = dyads;
    return j.dump(2) + "\n";
}

std::string trace_csv(const ChainResult& result) {
    std::string out = "step,chiSquare,accepted,trivial,runningPValue,distinctVisited\n";
    for (const TraceRow& r : result.trace) {
        out += std::to_string(r.step);
        out += ",";
        out += format_double(r.gf);
        out += ",";
        out += std::to_string(static_cast<int>(r.accepted));
        out += ",";
        out += std::to_string(static_cast<int>(r.trivial));
        out += ",";
        out += format_double(r.running_p);
        out += ",";
        out += std::to_string(r.distinct_visited);
        out += "\n";
    }
    return out;
}

std::string histogram_csv(std::span<const double> values, int bins) {
    std::string out = "bin_lo,bin_hi,count\n";
    if (values.empty()) return out;

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();

    if (bins <= 0) {
        // Freedman-Diaconis; falls back to one bin for degenerate spreads
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(sorted.size() - 1);
            const auto base = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(base);
            if (base + 1 >= sorted.size()) return sorted[base];
            return sorted[base] * (1.0 - frac) + sorted[base + 1] * frac;
        };
        const double iqr = quantile(0.75) - quantile(0.25);
        const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
        bins = (width > 0 && hi > lo)
                   ? static_cast<int>(std::clamp(std::ceil((hi - lo) / width), 1.0, 10000.0))
                   : 1;
    }

    const double width = hi > lo ? (hi - lo) / bins : 1.0;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : sorted) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= counts.size()) b = counts.size() - 1; // right edge inclusive
        counts[b]++;
    }
    for (int b = 0; b < bins; ++b) {
        out += format_double(lo + width * b);
        out += ",";
        out += format_double(lo + width * (b + 1));
        out += ",";
        out += std::to_string(counts[static_cast<std::size_t>(b)]);
        out += "\n";
    }
    return out;
}

std::string tv_csv(const ChainResult& result, std::uint64_t fiber_size, std::uint64_t every) {
    if (result.state_ids.empty())
        throw PreconditionViolation("chain did not record its state sequence");
    if (every < 1) throw PreconditionViolation("emission stride must be >= 1");

    std::string out = "step,distinctVisited,tvDistance\n";
    std::vector<std::uint64_t> counts(result.state_keys.size(), 0);
    std::uint64_t distinct = 0;

    for (std::size_t t = 0; t < result.state_ids.size(); ++t) {
        auto& c = counts[result.state_ids[t]];
        if (c == 0) distinct++;
        c++;
        if (t == 0 || t % every != 0) continue;
        // ids are assigned in first-visit order, so the visited states are
        // exactly the prefix counts[0..distinct)
        const double tv = tv_distance(std::span(counts.data(), distinct), fiber_size);
        out += std::to_string(t);
        out += ",";
        out += std::to_string(distinct);
        out += ",";
        out += format_double(tv);
        out += "\n";
    }
    return out;
}

} // namespace fiberwalk
