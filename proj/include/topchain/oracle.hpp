#pragma once

// Reference query algorithms computed directly on the temporal edge list
// (single scan over edges in nondecreasing start time), plus a seeded
// synthetic-graph generator. Nothing here touches the index structures, so
// these serve as independent ground truth in tests and as benchmark inputs.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "topchain/temporal_graph.hpp"
#include "topchain/types.hpp"

namespace topchain {

struct ArrivalScan {
    std::vector<Time> arrival;               // per vertex; kInfiniteTime if unreached
    std::optional<Time> return_to_source;    // best arrival back at the source via >= 1 edge
};

// Earliest arrivals from `source` to every vertex within `window`.
// `edges_by_start` must be sorted ascending by start time. Since every travel
// time is >= 1, an edge can never extend a path built from an equal-start
// edge, so one forward scan suffices.
inline ArrivalScan earliest_arrival_scan(std::uint32_t vertex_count,
                                         std::span<const TemporalEdge> edges_by_start,
                                         Vertex source, TimeInterval window) {
    ArrivalScan scan;
    scan.arrival.assign(vertex_count, kInfiniteTime);
    if (source >= vertex_count || !window.valid()) return scan;
    scan.arrival[source] = window.begin;
    for (const TemporalEdge& e : edges_by_start) {
        if (e.start > window.end) break;
        if (scan.arrival[e.from] > e.start) continue;
        Time arr = e.arrival();
        if (arr > window.end) continue;
        if (e.to == source) {
            if (!scan.return_to_source || arr < *scan.return_to_source)
                scan.return_to_source = arr;
        }
        if (arr < scan.arrival[e.to]) scan.arrival[e.to] = arr;
    }
    return scan;
}

inline std::vector<TemporalEdge> edges_sorted_by_start(const TemporalGraph& g) {
    std::vector<TemporalEdge> edges = g.edges;
    std::stable_sort(edges.begin(), edges.end(),
                     [](const TemporalEdge& a, const TemporalEdge& b) { return a.start < b.start; });
    return edges;
}

// For a == b the empty path is admitted by convention and yields t_alpha.
inline std::optional<Time> oracle_earliest_arrival(const TemporalGraph& g, Vertex a, Vertex b,
                                                   TimeInterval window) {
    if (!window.valid()) return std::nullopt;
    if (a == b) return a < g.vertex_count ? std::optional<Time>(window.begin) : std::nullopt;
    if (a >= g.vertex_count || b >= g.vertex_count) return std::nullopt;
    std::vector<TemporalEdge> edges = edges_sorted_by_start(g);
    ArrivalScan scan = earliest_arrival_scan(g.vertex_count, edges, a, window);
    if (scan.arrival[b] == kInfiniteTime) return std::nullopt;
    return scan.arrival[b];
}

// Reachability uses non-empty path semantics for a == b: the source must make
// an actual round trip within the window.
inline bool oracle_reach(const TemporalGraph& g, Vertex a, Vertex b, TimeInterval window) {
    if (!window.valid() || a >= g.vertex_count || b >= g.vertex_count) return false;
    std::vector<TemporalEdge> edges = edges_sorted_by_start(g);
    ArrivalScan scan = earliest_arrival_scan(g.vertex_count, edges, a, window);
    if (a == b) return scan.return_to_source.has_value();
    return scan.arrival[b] != kInfiniteTime;
}

// Every fastest path departs on some out-edge of a, so it suffices to try
// each distinct start time in the window as a fresh earliest-arrival problem.
inline std::optional<Time> oracle_min_duration(const TemporalGraph& g, Vertex a, Vertex b,
                                               TimeInterval window) {
    if (!window.valid()) return std::nullopt;
    if (a == b) return a < g.vertex_count ? std::optional<Time>(0) : std::nullopt;
    if (a >= g.vertex_count || b >= g.vertex_count) return std::nullopt;

    std::vector<TemporalEdge> edges = edges_sorted_by_start(g);
    std::vector<Time> starts;
    for (const TemporalEdge& e : edges)
        if (e.from == a && window.contains(e.start)) starts.push_back(e.start);
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

    std::optional<Time> best;
    for (Time t : starts) {
        ArrivalScan scan = earliest_arrival_scan(g.vertex_count, edges, a, {t, window.end});
        if (scan.arrival[b] == kInfiniteTime) continue;
        Time duration = scan.arrival[b] - t;
        if (!best || duration < *best) best = duration;
    }
    return best;
}

struct GenParams {
    std::uint32_t vertices = 0;
    double avg_degree = 1.0;
    std::uint32_t max_pair_multiplicity = 1;  // cap on parallel edges per ordered pair
    Time horizon = 100;                       // arrivals stay <= horizon
    Time min_travel = 1;
    Time max_travel = 1;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    return n ? rng() % n : 0;
}

}  // namespace detail

// Seed-deterministic power-law-ish temporal graph: sources are drawn from a
// Zipf-like weight profile (degree exponent ~2.5), targets uniformly. No
// self-loops; per-pair multiplicity respects the cap.
inline TemporalGraph random_temporal_graph(const GenParams& p) {
    TemporalGraph g;
    g.vertex_count = p.vertices;
    if (p.vertices < 2 || p.avg_degree <= 0) return g;

    std::mt19937_64 rng(p.seed);
    const std::uint64_t target_edges =
        static_cast<std::uint64_t>(std::llround(p.vertices * p.avg_degree));

    std::vector<double> cumulative(p.vertices);
    double total = 0;
    for (std::uint32_t v = 0; v < p.vertices; ++v) {
        total += std::pow(static_cast<double>(v + 1), -2.0 / 3.0);  // exponent 2.5
        cumulative[v] = total;
    }

    const Time lo = std::max<Time>(p.min_travel, 1);
    const Time hi = std::max(p.max_travel, lo);
    std::unordered_map<std::uint64_t, std::uint32_t> pair_count;
    pair_count.reserve(target_edges);

    for (std::uint64_t i = 0; i < target_edges; ++i) {
        for (int attempt = 0; attempt < 32; ++attempt) {
            double r = (rng() >> 11) * 0x1.0p-53 * total;
            Vertex from = static_cast<Vertex>(
                std::lower_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
            if (from >= p.vertices) from = p.vertices - 1;
            Vertex to = static_cast<Vertex>(detail::bounded(rng, p.vertices));
            if (to == from) continue;
            std::uint64_t key = (static_cast<std::uint64_t>(from) << 32) | to;
            auto& count = pair_count[key];
            if (count >= p.max_pair_multiplicity) continue;
            ++count;
            Time travel = lo + detail::bounded(rng, hi - lo + 1);
            Time start = detail::bounded(rng, p.horizon >= travel ? p.horizon - travel + 1 : 1);
            g.edges.push_back({from, to, start, travel});
            break;
        }
    }
    return g;
}

}  // namespace topchain
