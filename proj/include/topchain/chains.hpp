#pragma once

// Chain covers of the transformed DAG and per-vertex chain codes.
//
// The default cover merges V_in(v) and V_out(v) of each original vertex into
// one chain ordered by time stamp (IN before OUT on ties). Chain order there
// is reachability in the conceptual graph that also links every OUT copy to
// later IN copies of the same original; the query layer compensates for the
// one false-order case this introduces. A greedy cover is provided for
// arbitrary DAGs.

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "topchain/transform.hpp"
#include "topchain/types.hpp"

namespace topchain {

inline constexpr std::uint32_t kNoChain = std::numeric_limits<std::uint32_t>::max();

struct ChainCover {
    std::vector<std::vector<DagId>> chains;         // in creation order
    std::vector<std::uint32_t> chain_of;            // per DAG vertex
    std::vector<std::uint32_t> position;            // 0-based position within the chain
    std::vector<std::uint32_t> rank;                // per chain, 1-based; set by a ranking pass
    std::vector<std::uint32_t> chain_of_original;   // temporal covers only
    bool temporal = false;

    std::uint32_t chain_count() const { return static_cast<std::uint32_t>(chains.size()); }
    bool ranked() const { return rank.size() == chains.size() && !chains.empty(); }
};

struct ChainCode {
    std::uint32_t x = 0;  // chain rank
    Time y = 0;           // order key: time stamp or 1-based position

    friend bool operator==(const ChainCode&, const ChainCode&) = default;
};

enum class CodeMode { Timestamp, Position };

// One chain per original vertex that has any DAG copies: V_in(v) and V_out(v)
// merged ascending by time, IN ordered before OUT on equal times.
inline ChainCover temporal_chain_cover(const TransformedGraph& g) {
    ChainCover cover;
    cover.temporal = true;
    cover.chain_of.assign(g.size(), kNoChain);
    cover.position.assign(g.size(), 0);
    cover.chain_of_original.assign(g.original_count, kNoChain);

    for (Vertex v = 0; v < g.original_count; ++v) {
        const auto& ins = g.in_vertices[v];
        const auto& outs = g.out_vertices[v];
        if (ins.empty() && outs.empty()) continue;
        std::vector<DagId> chain;
        chain.reserve(ins.size() + outs.size());
        std::size_t i = 0, o = 0;
        while (i < ins.size() || o < outs.size()) {
            bool take_in =
                o >= outs.size() || (i < ins.size() && g.time[ins[i]] <= g.time[outs[o]]);
            chain.push_back(take_in ? ins[i++] : outs[o++]);
        }
        std::uint32_t c = cover.chain_count();
        for (std::size_t p = 0; p < chain.size(); ++p) {
            cover.chain_of[chain[p]] = c;
            cover.position[chain[p]] = static_cast<std::uint32_t>(p);
        }
        cover.chain_of_original[v] = c;
        cover.chains.push_back(std::move(chain));
    }
    return cover;
}

// Greedy cover for arbitrary DAGs: repeatedly start from the unassigned
// vertex earliest in topological order and extend with the unassigned
// out-neighbor earliest in that order.
inline ChainCover greedy_chain_cover(const TransformedGraph& g) {
    TopoSortResult topo = verify_dag(g);
    if (!topo.ok()) throw std::invalid_argument("greedy_chain_cover: input graph has a cycle");

    ChainCover cover;
    cover.chain_of.assign(g.size(), kNoChain);
    cover.position.assign(g.size(), 0);

    std::vector<std::uint32_t> topo_pos(g.size());
    for (std::uint32_t i = 0; i < topo.order.size(); ++i) topo_pos[topo.order[i]] = i;

    for (DagId head : topo.order) {
        if (cover.chain_of[head] != kNoChain) continue;
        std::vector<DagId> chain;
        DagId v = head;
        while (true) {
            std::uint32_t c = cover.chain_count();
            cover.chain_of[v] = c;
            cover.position[v] = static_cast<std::uint32_t>(chain.size());
            chain.push_back(v);
            DagId next = kNoDagVertex;
            for (DagId w : g.out(v))
                if (cover.chain_of[w] == kNoChain &&
                    (next == kNoDagVertex || topo_pos[w] < topo_pos[next]))
                    next = w;
            if (next == kNoDagVertex) break;
            v = next;
        }
        cover.chains.push_back(std::move(chain));
    }
    return cover;
}

// Rank 1 goes to the chain with the largest total degree; ties break toward
// the earlier-created chain (ascending original id for temporal covers).
inline void rank_by_degree(ChainCover& cover, const TransformedGraph& g) {
    std::vector<std::uint64_t> weight(cover.chain_count(), 0);
    for (std::uint32_t c = 0; c < cover.chain_count(); ++c)
        for (DagId v : cover.chains[c]) weight[c] += g.out(v).size() + g.in(v).size();

    std::vector<std::uint32_t> by_weight(cover.chain_count());
    for (std::uint32_t c = 0; c < cover.chain_count(); ++c) by_weight[c] = c;
    std::sort(by_weight.begin(), by_weight.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (weight[a] != weight[b]) return weight[a] > weight[b];
        return a < b;
    });
    cover.rank.assign(cover.chain_count(), 0);
    for (std::uint32_t i = 0; i < by_weight.size(); ++i) cover.rank[by_weight[i]] = i + 1;
}

// Baseline ranking: a seed-deterministic permutation.
inline void rank_random(ChainCover& cover, std::uint64_t seed) {
    std::uint32_t n = cover.chain_count();
    cover.rank.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) cover.rank[i] = i + 1;
    std::mt19937_64 rng(seed);
    for (std::uint32_t i = n; i > 1; --i) {
        std::uint32_t j = static_cast<std::uint32_t>(rng() % i);
        std::swap(cover.rank[i - 1], cover.rank[j]);
    }
}

inline std::vector<ChainCode> assign_codes(const ChainCover& cover, const TransformedGraph& g,
                                           CodeMode mode) {
    if (!cover.ranked() && cover.chain_count() > 0)
        throw std::logic_error("assign_codes: cover is not ranked");
    if (mode == CodeMode::Timestamp && !cover.temporal)
        throw std::invalid_argument("assign_codes: timestamp codes need a temporal chain cover");

    std::vector<ChainCode> codes(g.size());
    for (DagId v = 0; v < g.size(); ++v) {
        std::uint32_t c = cover.chain_of[v];
        codes[v].x = cover.rank[c];
        codes[v].y = mode == CodeMode::Timestamp ? g.time[v] : cover.position[v] + 1;
    }
    return codes;
}

}  // namespace topchain
