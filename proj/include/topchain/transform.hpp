#pragma once

// Transformation of a temporal graph into its DAG of time-stamped vertex
// copies. Every original vertex v contributes one IN copy per distinct
// arrival time and one OUT copy per distinct start time; edges are
//   (a) chain edges linking time-adjacent copies inside V_in(v) / V_out(v),
//   (b) claim edges from IN copies to the matching OUT copy, assigned by a
//       descending-time scan where each OUT copy is claimed at most once,
//   (c) cross edges <u,t> -> <v,t+lambda>, one per distinct temporal edge.
// With all travel times >= 1 the result is acyclic.
//
// Adjacency lives in flat offset-indexed arrays while the graph is immutable
// (one counting pass at build time); the first mutation thaws it into
// per-vertex rows that support edge insertion and removal. Readers always go
// through out(v) / in(v).

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "topchain/temporal_graph.hpp"
#include "topchain/types.hpp"

namespace topchain {

enum class VertexKind : std::uint8_t { In, Out };

struct TransformedGraph {
    std::uint32_t original_count = 0;

    // per DAG vertex
    std::vector<Vertex> original;
    std::vector<Time> time;
    std::vector<VertexKind> kind;

    // frozen adjacency
    std::vector<std::uint32_t> out_offsets, in_offsets;  // size() + 1 entries
    std::vector<DagId> out_targets, in_targets;
    // thawed adjacency
    std::vector<std::vector<DagId>> out_rows, in_rows;
    bool dynamic = false;

    // per original vertex, DAG ids ascending by time
    std::vector<std::vector<DagId>> in_vertices;   // V_in(v)
    std::vector<std::vector<DagId>> out_vertices;  // V_out(v)

    std::size_t edge_count = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(original.size()); }

    std::span<const DagId> out(DagId v) const {
        if (dynamic) return out_rows[v];
        return {out_targets.data() + out_offsets[v],
                static_cast<std::size_t>(out_offsets[v + 1] - out_offsets[v])};
    }

    std::span<const DagId> in(DagId v) const {
        if (dynamic) return in_rows[v];
        return {in_targets.data() + in_offsets[v],
                static_cast<std::size_t>(in_offsets[v + 1] - in_offsets[v])};
    }

    // Switch to per-vertex rows so edges can be spliced in and out.
    void thaw() {
        if (dynamic) return;
        const std::uint32_t n = size();
        out_rows.resize(n);
        in_rows.resize(n);
        for (DagId v = 0; v < n; ++v) {
            auto o = out(v), i = in(v);
            out_rows[v].assign(o.begin(), o.end());
            in_rows[v].assign(i.begin(), i.end());
        }
        out_offsets = {};
        in_offsets = {};
        out_targets = {};
        in_targets = {};
        dynamic = true;
    }

    DagId add_vertex(Vertex orig, Time t, VertexKind k) {
        thaw();
        DagId id = size();
        original.push_back(orig);
        time.push_back(t);
        kind.push_back(k);
        out_rows.emplace_back();
        in_rows.emplace_back();
        return id;
    }

    void add_edge(DagId from, DagId to) {
        thaw();
        out_rows[from].push_back(to);
        in_rows[to].push_back(from);
        ++edge_count;
    }

    bool has_edge(DagId from, DagId to) const {
        auto row = out(from);
        return std::find(row.begin(), row.end(), to) != row.end();
    }

    void remove_edge(DagId from, DagId to) {
        thaw();
        auto del = [](std::vector<DagId>& row, DagId x) {
            auto it = std::find(row.begin(), row.end(), x);
            if (it != row.end()) row.erase(it);
        };
        del(out_rows[from], to);
        del(in_rows[to], from);
        --edge_count;
    }
};

namespace detail {

// Step 2(b): IN copies in descending time each claim the earliest still-free
// OUT copy with time >= their own. `next_free` is a successor structure with
// path halving so the whole scan stays near linear.
inline std::vector<std::pair<DagId, DagId>> compute_claim_edges(
    const std::vector<DagId>& in_ids, const std::vector<DagId>& out_ids,
    const std::vector<Time>& time) {
    std::vector<std::pair<DagId, DagId>> claims;
    if (in_ids.empty() || out_ids.empty()) return claims;

    std::vector<std::size_t> next_free(out_ids.size() + 1);
    for (std::size_t i = 0; i <= out_ids.size(); ++i) next_free[i] = i;
    auto find_free = [&](std::size_t i) {
        while (next_free[i] != i) {
            next_free[i] = next_free[next_free[i]];
            i = next_free[i];
        }
        return i;
    };

    for (std::size_t r = in_ids.size(); r-- > 0;) {
        DagId in_id = in_ids[r];  // descending time order
        auto it = std::lower_bound(out_ids.begin(), out_ids.end(), time[in_id],
                                   [&](DagId o, Time t) { return time[o] < t; });
        std::size_t slot = find_free(static_cast<std::size_t>(it - out_ids.begin()));
        if (slot >= out_ids.size()) continue;
        claims.emplace_back(in_id, out_ids[slot]);
        next_free[slot] = slot + 1;
    }
    return claims;
}

// One counting pass over an edge list into the frozen offset arrays.
inline void freeze_edges(TransformedGraph& t, std::vector<std::pair<DagId, DagId>>& edges) {
    const std::uint32_t n = t.size();
    t.out_offsets.assign(n + 1, 0);
    t.in_offsets.assign(n + 1, 0);
    for (auto [a, b] : edges) {
        ++t.out_offsets[a + 1];
        ++t.in_offsets[b + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        t.out_offsets[v + 1] += t.out_offsets[v];
        t.in_offsets[v + 1] += t.in_offsets[v];
    }
    t.out_targets.resize(edges.size());
    t.in_targets.resize(edges.size());
    std::vector<std::uint32_t> out_at(t.out_offsets.begin(), t.out_offsets.end() - 1);
    std::vector<std::uint32_t> in_at(t.in_offsets.begin(), t.in_offsets.end() - 1);
    for (auto [a, b] : edges) {
        t.out_targets[out_at[a]++] = b;
        t.in_targets[in_at[b]++] = a;
    }
    t.edge_count = edges.size();
}

}  // namespace detail

inline TransformedGraph transform(const TemporalGraph& g) {
    TransformedGraph t;
    t.original_count = g.vertex_count;
    t.in_vertices.resize(g.vertex_count);
    t.out_vertices.resize(g.vertex_count);

    std::vector<std::uint32_t> out_degree(g.vertex_count, 0), in_degree(g.vertex_count, 0);
    for (const TemporalEdge& e : g.edges) {
        ++out_degree[e.from];
        ++in_degree[e.to];
    }
    std::vector<std::vector<Time>> in_times(g.vertex_count), out_times(g.vertex_count);
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        out_times[v].reserve(out_degree[v]);
        in_times[v].reserve(in_degree[v]);
    }
    for (const TemporalEdge& e : g.edges) {
        out_times[e.from].push_back(e.start);
        in_times[e.to].push_back(e.arrival());
    }
    auto dedup = [](std::vector<Time>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };

    // Vertex ids are assigned per original vertex in ascending time, IN
    // before OUT on ties, so each merged chain occupies a contiguous range.
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        dedup(in_times[v]);
        dedup(out_times[v]);
        std::size_t i = 0, o = 0;
        while (i < in_times[v].size() || o < out_times[v].size()) {
            bool take_in = o >= out_times[v].size() ||
                           (i < in_times[v].size() && in_times[v][i] <= out_times[v][o]);
            DagId id = t.size();
            t.original.push_back(v);
            if (take_in) {
                t.time.push_back(in_times[v][i++]);
                t.kind.push_back(VertexKind::In);
                t.in_vertices[v].push_back(id);
            } else {
                t.time.push_back(out_times[v][o++]);
                t.kind.push_back(VertexKind::Out);
                t.out_vertices[v].push_back(id);
            }
        }
    }

    std::vector<std::pair<DagId, DagId>> edges;
    for (Vertex v = 0; v < g.vertex_count; ++v) {
        for (std::size_t i = 1; i < t.in_vertices[v].size(); ++i)
            edges.emplace_back(t.in_vertices[v][i - 1], t.in_vertices[v][i]);
        for (std::size_t i = 1; i < t.out_vertices[v].size(); ++i)
            edges.emplace_back(t.out_vertices[v][i - 1], t.out_vertices[v][i]);
        auto claims = detail::compute_claim_edges(t.in_vertices[v], t.out_vertices[v], t.time);
        edges.insert(edges.end(), claims.begin(), claims.end());
    }

    // the deduplicated time arrays run parallel to the id lists, so a search
    // in them gives the id by position
    auto locate = [](const std::vector<Time>& times, const std::vector<DagId>& ids, Time x) {
        auto it = std::lower_bound(times.begin(), times.end(), x);
        return ids[static_cast<std::size_t>(it - times.begin())];
    };
    std::vector<std::pair<DagId, DagId>> cross;
    cross.reserve(g.edges.size());
    for (const TemporalEdge& e : g.edges)
        cross.emplace_back(locate(out_times[e.from], t.out_vertices[e.from], e.start),
                           locate(in_times[e.to], t.in_vertices[e.to], e.arrival()));
    std::sort(cross.begin(), cross.end());
    cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
    edges.insert(edges.end(), cross.begin(), cross.end());

    detail::freeze_edges(t, edges);
    return t;
}

struct TopoSortResult {
    std::vector<DagId> order;  // complete iff the graph is acyclic
    std::vector<DagId> cycle;  // a witness cycle when one exists

    bool ok() const { return cycle.empty(); }
};

// Kahn's algorithm; seeds in ascending id so the order is deterministic.
// When `levels` is given it receives the longest-in-path depth of every
// vertex (sources get 1), computed in the same sweep: a vertex is dequeued
// only after all its predecessors, so its level is final by then.
inline TopoSortResult verify_dag(const TransformedGraph& g,
                                 std::vector<std::uint32_t>* levels = nullptr) {
    TopoSortResult result;
    const std::uint32_t n = g.size();
    std::vector<std::uint32_t> degree(n, 0);
    for (DagId v = 0; v < n; ++v)
        for (DagId w : g.out(v)) ++degree[w];
    if (levels) levels->assign(n, 1);

    std::vector<DagId> queue;
    queue.reserve(n);
    for (DagId v = 0; v < n; ++v)
        if (degree[v] == 0) queue.push_back(v);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        DagId v = queue[head];
        if (head + 2 < queue.size())
            for (DagId w : g.out(queue[head + 2])) __builtin_prefetch(&degree[w]);
        result.order.push_back(v);
        for (DagId w : g.out(v)) {
            if (levels)
                (*levels)[w] = std::max((*levels)[w], (*levels)[v] + 1);
            if (--degree[w] == 0) queue.push_back(w);
        }
    }
    if (result.order.size() == n) return result;

    // walk backwards through still-cyclic vertices until one repeats
    std::vector<bool> remaining(n, true);
    for (DagId v : result.order) remaining[v] = false;
    DagId start = 0;
    while (!remaining[start]) ++start;
    std::vector<DagId> walk;
    std::vector<std::uint32_t> seen_at(n, kNoDagVertex);
    DagId v = start;
    while (seen_at[v] == kNoDagVertex) {
        seen_at[v] = static_cast<std::uint32_t>(walk.size());
        walk.push_back(v);
        for (DagId w : g.in(v)) {
            if (remaining[w]) {
                v = w;
                break;
            }
        }
    }
    result.cycle.assign(walk.begin() + seen_at[v], walk.end());
    std::reverse(result.cycle.begin(), result.cycle.end());
    result.order.clear();
    return result;
}

// Earliest OUT copy of `a` departing at or after `not_before`.
inline std::optional<DagId> locate_out(const TransformedGraph& g, Vertex a, Time not_before) {
    if (a >= g.out_vertices.size()) return std::nullopt;
    const auto& ids = g.out_vertices[a];
    auto it = std::lower_bound(ids.begin(), ids.end(), not_before,
                               [&](DagId d, Time tm) { return g.time[d] < tm; });
    if (it == ids.end()) return std::nullopt;
    return *it;
}

// Latest IN copy of `b` arriving at or before `not_after`.
inline std::optional<DagId> locate_in(const TransformedGraph& g, Vertex b, Time not_after) {
    if (b >= g.in_vertices.size()) return std::nullopt;
    const auto& ids = g.in_vertices[b];
    auto it = std::upper_bound(ids.begin(), ids.end(), not_after,
                               [&](Time tm, DagId d) { return tm < g.time[d]; });
    if (it == ids.begin()) return std::nullopt;
    return *(it - 1);
}

// Wraps a plain DAG (vertex ids 0..n-1, explicit edge list) in the
// TransformedGraph shape so the chain-cover and labeling machinery can run on
// arbitrary DAGs. Each vertex becomes the sole OUT copy of its own original.
inline TransformedGraph make_dag(std::uint32_t n, std::vector<std::pair<DagId, DagId>> edges) {
    TransformedGraph t;
    t.original_count = n;
    t.in_vertices.resize(n);
    t.out_vertices.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        t.original.push_back(v);
        t.time.push_back(0);
        t.kind.push_back(VertexKind::Out);
        t.out_vertices[v].push_back(v);
    }
    for (auto [a, b] : edges)
        if (a >= n || b >= n) throw std::out_of_range("make_dag: edge endpoint out of range");
    detail::freeze_edges(t, edges);
    return t;
}

}  // namespace topchain
