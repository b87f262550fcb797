#pragma once

// Incremental edge insertion. Inserting (a, b, t, lambda) creates the missing
// time-stamped copies <a,t> and <b,t+lambda>, splices them into their
// per-kind chains and the merged cover chain, re-runs the claim-edge
// assignment of originals a and b locally, adds the cross edge, and then
// propagates labels: a reverse BFS from <a,t> merges out-labels parent-to-
// child and stops wherever a merge changes nothing; a forward BFS from
// <b,t+lambda> does the same for in-labels.
//
// Requires timestamp codes on the merged temporal cover (position codes
// would shift under insertion, invalidating labels graph-wide) and full
// label sets; a reduced index is materialized on first insert. New chains are
// appended after all existing ranks. Topological labels are either rebuilt
// per insert (Plus) or marked stale, which disables topological pruning until
// refresh_topo runs.
//
// Exclusive access required: no queries may run during an insert.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "topchain/index.hpp"
#include "topchain/types.hpp"

namespace topchain {

enum class UpdateMode { Plain, Plus };

struct UpdateStats {
    std::uint32_t vertices_created = 0;
    std::uint32_t claim_edges_rewired = 0;  // removed + added
    std::uint32_t out_labels_touched = 0;
    std::uint32_t in_labels_touched = 0;
    std::uint32_t bfs_visits = 0;
    bool topo_refreshed = false;
};

inline void refresh_topo(Index& index) {
    index.topo = build_topo_labels(index.graph);
}

// Expand reduced labels back into full per-vertex sets. Copies exactly the
// sets queries already resolve to, so answers are unchanged.
inline void materialize_labels(Index& index) {
    IndexLabels& l = index.labels;
    if (!l.reduced) return;
    const std::size_t n = index.graph.size();
    l.out_pool.resize(l.cap * n);
    l.in_pool.resize(l.cap * n);
    l.out_count.assign(n, 0);
    l.in_count.assign(n, 0);
    for (DagId v = 0; v < n; ++v) {
        auto out = index.out_labels(v);
        auto in = index.in_labels(v);
        std::copy(out.begin(), out.end(), &l.out_pool[static_cast<std::size_t>(v) * l.cap]);
        std::copy(in.begin(), in.end(), &l.in_pool[static_cast<std::size_t>(v) * l.cap]);
        l.out_count[v] = static_cast<std::uint32_t>(out.size());
        l.in_count[v] = static_cast<std::uint32_t>(in.size());
    }
    l.reduced = false;
    l.own_pool = {};
    l.own_count = {};
    l.out_source = {};
    l.in_source = {};
}

namespace detail {

// Re-pack both pools when the slot width must grow (k allows more codes than
// the old chain count did).
inline void grow_label_capacity(IndexLabels& l, std::uint32_t new_cap, std::size_t n) {
    if (new_cap <= l.cap) return;
    std::vector<ChainCode> out_pool(new_cap * n), in_pool(new_cap * n);
    for (std::size_t v = 0; v < n; ++v) {
        std::copy_n(&l.out_pool[v * l.cap], l.out_count[v], &out_pool[v * new_cap]);
        std::copy_n(&l.in_pool[v * l.cap], l.in_count[v], &in_pool[v * new_cap]);
    }
    l.out_pool = std::move(out_pool);
    l.in_pool = std::move(in_pool);
    l.cap = new_cap;
}

inline std::vector<std::pair<DagId, DagId>> current_claim_edges(const TransformedGraph& g,
                                                                Vertex v) {
    std::vector<std::pair<DagId, DagId>> claims;
    for (DagId in_id : g.in_vertices[v])
        for (DagId w : g.out(in_id))
            if (g.original[w] == v && g.kind[w] == VertexKind::Out) claims.emplace_back(in_id, w);
    std::sort(claims.begin(), claims.end());
    return claims;
}

inline void rewire_claims(TransformedGraph& g, Vertex v, UpdateStats& stats) {
    auto current = current_claim_edges(g, v);
    auto desired = compute_claim_edges(g.in_vertices[v], g.out_vertices[v], g.time);
    std::sort(desired.begin(), desired.end());
    std::vector<std::pair<DagId, DagId>> removed, added;
    std::set_difference(current.begin(), current.end(), desired.begin(), desired.end(),
                        std::back_inserter(removed));
    std::set_difference(desired.begin(), desired.end(), current.begin(), current.end(),
                        std::back_inserter(added));
    for (auto [from, to] : removed) g.remove_edge(from, to);
    for (auto [from, to] : added) g.add_edge(from, to);
    stats.claim_edges_rewired += static_cast<std::uint32_t>(removed.size() + added.size());
}

}  // namespace detail

class Updater {
public:
    explicit Updater(Index& index) : index_(index) {
        if (!index.cover.temporal || index.options.codes != CodeMode::Timestamp)
            throw std::invalid_argument(
                "insert_edge: updates need timestamp codes on the merged temporal cover");
    }

    UpdateStats insert(const TemporalEdge& e, UpdateMode mode) {
        if (e.travel == 0) throw std::invalid_argument("insert_edge: zero traversal time");
        if (e.start > kInfiniteTime - e.travel)
            throw std::invalid_argument("insert_edge: arrival time overflows");
        materialize_labels(index_);

        UpdateStats stats;
        grow_originals(std::max(e.from, e.to));
        auto [u, u_new] = ensure_vertex(e.from, e.start, VertexKind::Out, stats);
        auto [v, v_new] = ensure_vertex(e.to, e.arrival(), VertexKind::In, stats);
        if (u_new) seed_labels_from_chain(u);
        if (v_new) seed_labels_from_chain(v);

        detail::rewire_claims(index_.graph, e.from, stats);
        if (e.to != e.from) detail::rewire_claims(index_.graph, e.to, stats);

        if (!index_.graph.has_edge(u, v)) index_.graph.add_edge(u, v);

        propagate_out(u, v, stats);
        propagate_in(v, u, stats);

        if (mode == UpdateMode::Plus) {
            refresh_topo(index_);
            stats.topo_refreshed = true;
        } else {
            index_.topo.valid = false;
        }
        return stats;
    }

private:
    void grow_originals(Vertex max_id) {
        TransformedGraph& g = index_.graph;
        if (max_id < g.original_count) return;
        g.original_count = max_id + 1;
        g.in_vertices.resize(g.original_count);
        g.out_vertices.resize(g.original_count);
        index_.cover.chain_of_original.resize(g.original_count, kNoChain);
    }

    std::pair<DagId, bool> ensure_vertex(Vertex orig, Time t, VertexKind kind,
                                         UpdateStats& stats) {
        TransformedGraph& g = index_.graph;
        auto& ids = kind == VertexKind::Out ? g.out_vertices[orig] : g.in_vertices[orig];
        auto it = std::lower_bound(ids.begin(), ids.end(), t,
                                   [&](DagId d, Time tm) { return g.time[d] < tm; });
        if (it != ids.end() && g.time[*it] == t) return {*it, false};

        DagId id = g.add_vertex(orig, t, kind);
        ++stats.vertices_created;

        // splice the per-kind chain edges around the new copy
        DagId prev = it == ids.begin() ? kNoDagVertex : *(it - 1);
        DagId next = it == ids.end() ? kNoDagVertex : *it;
        if (prev != kNoDagVertex && next != kNoDagVertex) g.remove_edge(prev, next);
        if (prev != kNoDagVertex) g.add_edge(prev, id);
        if (next != kNoDagVertex) g.add_edge(id, next);
        ids.insert(it, id);

        insert_into_cover(orig, id, t);

        IndexLabels& l = index_.labels;
        detail::grow_label_capacity(
            l, std::min(index_.options.k, index_.cover.chain_count()), g.size() - 1);
        l.out_pool.resize(l.out_pool.size() + l.cap);
        l.in_pool.resize(l.in_pool.size() + l.cap);
        l.out_pool[static_cast<std::size_t>(id) * l.cap] = index_.codes[id];
        l.in_pool[static_cast<std::size_t>(id) * l.cap] = index_.codes[id];
        l.out_count.push_back(1);
        l.in_count.push_back(1);
        return {id, true};
    }

    void insert_into_cover(Vertex orig, DagId id, Time t) {
        ChainCover& cover = index_.cover;
        std::uint32_t c = cover.chain_of_original[orig];
        if (c == kNoChain) {
            c = cover.chain_count();
            cover.chains.emplace_back();
            cover.rank.push_back(c + 1);  // ranked after every existing chain
            cover.chain_of_original[orig] = c;
        }
        auto& chain = cover.chains[c];
        const TransformedGraph& g = index_.graph;
        auto pos = std::lower_bound(chain.begin(), chain.end(), id, [&](DagId d, DagId nid) {
            if (g.time[d] != g.time[nid]) return g.time[d] < g.time[nid];
            return g.kind[d] == VertexKind::In && g.kind[nid] == VertexKind::Out;
        });
        std::uint32_t at = static_cast<std::uint32_t>(pos - chain.begin());
        chain.insert(pos, id);
        cover.chain_of.push_back(c);
        cover.position.push_back(at);
        for (std::size_t i = at; i < chain.size(); ++i)
            cover.position[chain[i]] = static_cast<std::uint32_t>(i);
        index_.codes.push_back({cover.rank[c], t});
    }

    // A fresh copy first inherits from its merged-chain neighbors: in-labels
    // flow forward from the predecessor, out-labels backward from the
    // successor.
    void seed_labels_from_chain(DagId id) {
        const ChainCover& cover = index_.cover;
        const auto& chain = cover.chains[cover.chain_of[id]];
        std::uint32_t at = cover.position[id];
        if (at > 0) merge_in(id, chain[at - 1]);
        if (at + 1 < chain.size()) merge_out(id, chain[at + 1]);
    }

    bool merge_out(DagId dest, DagId src) {
        IndexLabels& l = index_.labels;
        std::span<const ChainCode> s(&l.out_pool[static_cast<std::size_t>(src) * l.cap],
                                     l.out_count[src]);
        return merge_topk_into(&l.out_pool[static_cast<std::size_t>(dest) * l.cap],
                               l.out_count[dest], s, l.cap, true, scratch_);
    }

    bool merge_in(DagId dest, DagId src) {
        IndexLabels& l = index_.labels;
        std::span<const ChainCode> s(&l.in_pool[static_cast<std::size_t>(src) * l.cap],
                                     l.in_count[src]);
        return merge_topk_into(&l.in_pool[static_cast<std::size_t>(dest) * l.cap],
                               l.in_count[dest], s, l.cap, false, scratch_);
    }

    void propagate_out(DagId u, DagId v, UpdateStats& stats) {
        queue_.clear();
        ++stats.bfs_visits;
        if (merge_out(u, v)) {
            ++stats.out_labels_touched;
            queue_.push_back(u);
        }
        const TransformedGraph& g = index_.graph;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            DagId w = queue_[head];
            for (DagId z : g.in(w)) {
                ++stats.bfs_visits;
                if (merge_out(z, w)) {
                    ++stats.out_labels_touched;
                    queue_.push_back(z);
                }
            }
        }
    }

    void propagate_in(DagId v, DagId u, UpdateStats& stats) {
        queue_.clear();
        ++stats.bfs_visits;
        if (merge_in(v, u)) {
            ++stats.in_labels_touched;
            queue_.push_back(v);
        }
        const TransformedGraph& g = index_.graph;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            DagId w = queue_[head];
            for (DagId z : g.out(w)) {
                ++stats.bfs_visits;
                if (merge_in(z, w)) {
                    ++stats.in_labels_touched;
                    queue_.push_back(z);
                }
            }
        }
    }

    Index& index_;
    std::vector<ChainCode> scratch_;
    std::vector<DagId> queue_;
};

inline UpdateStats insert_edge(Index& index, const TemporalEdge& e,
                               UpdateMode mode = UpdateMode::Plain) {
    return Updater(index).insert(e, mode);
}

}  // namespace topchain
