#pragma once

// Temporal graph data model: a multiset of timestamped edges (u, v, t, lambda),
// a line-oriented text format for loading/saving edge lists, and basic counts.

#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "topchain/types.hpp"

namespace topchain {

// One directed contact: from -> to, departing at start, arriving at
// start + travel. travel is always >= 1; a zero traversal time would allow
// cycles in the transformed graph.
struct TemporalEdge {
    Vertex from = 0;
    Vertex to = 0;
    Time start = 0;
    Time travel = 1;

    Time arrival() const { return start + travel; }
    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

struct TemporalGraph {
    std::uint32_t vertex_count = 0;
    std::vector<TemporalEdge> edges;  // multiset, input order preserved
};

struct GraphStats {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t max_pair_multiplicity = 0;  // most parallel edges between one ordered pair
    std::uint64_t distinct_times = 0;         // distinct instants among all starts and arrivals
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline bool parse_u64(const std::string& text, std::size_t& pos, std::uint64_t& out) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
    std::uint64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) return false;
        value = value * 10 + digit;
        ++pos;
    }
    out = value;
    return true;
}

inline bool blank_from(const std::string& text, std::size_t pos) {
    for (; pos < text.size(); ++pos) {
        if (text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r') return false;
    }
    return true;
}

}  // namespace detail

// Text format: one edge per line as `u v t lambda`; lines starting with `#`
// are comments; the optional header `# vertices N` declares the vertex count
// (otherwise it is 1 + the largest id seen).
inline TemporalGraph parse_edge_list(std::istream& input) {
    TemporalGraph g;
    std::optional<std::uint64_t> declared;
    std::uint64_t max_id = 0;
    bool any_edge = false;
    std::vector<std::size_t> edge_lines;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        std::size_t pos = 0;
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos >= line.size() || line[pos] == '\r') continue;
        if (line[pos] == '#') {
            // recognize the vertex-count header, ignore other comments
            std::size_t p = pos + 1;
            while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
            if (line.compare(p, 8, "vertices") == 0) {
                p += 8;
                std::uint64_t n = 0;
                if (!detail::parse_u64(line, p, n) || !detail::blank_from(line, p))
                    throw ParseError(line_no, "malformed vertices header");
                if (n > std::numeric_limits<std::uint32_t>::max())
                    throw ParseError(line_no, "vertex count out of range");
                declared = n;
            }
            continue;
        }

        std::uint64_t u, v, t, lambda;
        if (!detail::parse_u64(line, pos, u) || !detail::parse_u64(line, pos, v) ||
            !detail::parse_u64(line, pos, t) || !detail::parse_u64(line, pos, lambda) ||
            !detail::blank_from(line, pos))
            throw ParseError(line_no, "malformed edge line (expected `u v t lambda`)");
        if (lambda == 0) throw ParseError(line_no, "zero traversal time");
        if (u > std::numeric_limits<Vertex>::max() || v > std::numeric_limits<Vertex>::max())
            throw ParseError(line_no, "vertex id out of range");
        if (t > kInfiniteTime - lambda) throw ParseError(line_no, "arrival time overflows");

        g.edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), t, lambda});
        edge_lines.push_back(line_no);
        max_id = std::max(max_id, std::max(u, v));
        any_edge = true;
    }

    if (declared) {
        g.vertex_count = static_cast<std::uint32_t>(*declared);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (g.edges[i].from >= g.vertex_count || g.edges[i].to >= g.vertex_count)
                throw ParseError(edge_lines[i], "vertex id exceeds declared vertex count");
        }
    } else {
        g.vertex_count = any_edge ? static_cast<std::uint32_t>(max_id + 1) : 0;
    }
    return g;
}

inline void serialize_edge_list(const TemporalGraph& g, std::ostream& out) {
    out << "# vertices " << g.vertex_count << "\n";
    for (const TemporalEdge& e : g.edges)
        out << e.from << " " << e.to << " " << e.start << " " << e.travel << "\n";
}

inline GraphStats stats(const TemporalGraph& g) {
    GraphStats s;
    s.vertices = g.vertex_count;
    s.edges = g.edges.size();

    std::unordered_map<std::uint64_t, std::uint64_t> pair_count;
    std::unordered_set<Time> times;
    pair_count.reserve(g.edges.size());
    times.reserve(2 * g.edges.size());
    for (const TemporalEdge& e : g.edges) {
        std::uint64_t key = (static_cast<std::uint64_t>(e.from) << 32) | e.to;
        s.max_pair_multiplicity = std::max(s.max_pair_multiplicity, ++pair_count[key]);
        times.insert(e.start);
        times.insert(e.arrival());
    }
    s.distinct_times = times.size();
    return s;
}

}  // namespace topchain
