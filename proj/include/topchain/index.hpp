#pragma once

// The queryable bundle: transformed graph, ranked chain cover with codes,
// top-k labels (optionally reduced) and topological pruning labels, all built
// from one temporal graph. Immutable under queries; updates need exclusive
// access.

#include <stdexcept>
#include <vector>

#include "topchain/chains.hpp"
#include "topchain/labels.hpp"
#include "topchain/transform.hpp"
#include "topchain/types.hpp"

namespace topchain {

enum class RankMode { Degree, Random };
enum class ChainMode { MergedTemporal, Greedy };

struct BuildOptions {
    std::uint32_t k = 5;
    ChainMode chains = ChainMode::MergedTemporal;
    RankMode rank = RankMode::Degree;
    CodeMode codes = CodeMode::Timestamp;
    bool reduce = true;
    std::uint64_t seed = 0;  // used by random ranking
};

struct Index {
    TransformedGraph graph;
    ChainCover cover;
    std::vector<ChainCode> codes;
    IndexLabels labels;
    TopoLabels topo;
    BuildOptions options;

    std::span<const ChainCode> out_labels(DagId v) const {
        if (!labels.reduced)
            return {&labels.out_pool[static_cast<std::size_t>(v) * labels.cap],
                    labels.out_count[v]};
        DagId src = labels.out_source[v];
        if (src == kNoDagVertex) return {&codes[v], 1};
        return {&labels.own_pool[static_cast<std::size_t>(src) * labels.cap],
                labels.own_count[src]};
    }

    std::span<const ChainCode> in_labels(DagId v) const {
        if (!labels.reduced)
            return {&labels.in_pool[static_cast<std::size_t>(v) * labels.cap],
                    labels.in_count[v]};
        DagId src = labels.in_source[v];
        if (src == kNoDagVertex) return {&codes[v], 1};
        return {&labels.own_pool[static_cast<std::size_t>(src) * labels.cap],
                labels.own_count[src]};
    }
};

inline Index build_index_on(TransformedGraph&& graph, BuildOptions options) {
    if (options.k == 0) throw std::invalid_argument("build_index: k must be >= 1");
    if (options.chains == ChainMode::Greedy && options.codes == CodeMode::Timestamp)
        options.codes = CodeMode::Position;  // timestamp order is meaningless there

    Index index;
    index.graph = std::move(graph);
    index.options = options;

    index.cover = options.chains == ChainMode::MergedTemporal
                      ? temporal_chain_cover(index.graph)
                      : greedy_chain_cover(index.graph);
    if (options.rank == RankMode::Degree)
        rank_by_degree(index.cover, index.graph);
    else
        rank_random(index.cover, options.seed);
    index.codes = assign_codes(index.cover, index.graph, options.codes);

    TopoSortResult topo = verify_dag(index.graph);
    if (!topo.ok()) throw std::logic_error("build_index: transformed graph has a cycle");
    if (options.reduce && index.cover.temporal)
        index.labels = build_reduced_labels(index.graph, index.codes, options.k, topo.order,
                                            index.cover.chain_count());
    else
        index.labels = build_labels(index.graph, index.codes, options.k, topo.order,
                                    index.cover.chain_count());
    index.topo = build_topo_labels_from_order(index.graph, topo.order);
    return index;
}

inline Index build_index(const TemporalGraph& g, BuildOptions options = {}) {
    return build_index_on(transform(g), options);
}

// Rough in-memory footprint, for reports.
inline std::size_t index_memory_bytes(const Index& index) {
    auto vec_bytes = [](const auto& v) { return v.capacity() * sizeof(v[0]); };
    const TransformedGraph& g = index.graph;
    std::size_t bytes = vec_bytes(g.original) + vec_bytes(g.time) + vec_bytes(g.kind);
    bytes += vec_bytes(g.out_offsets) + vec_bytes(g.in_offsets) + vec_bytes(g.out_targets) +
             vec_bytes(g.in_targets);
    for (const auto& row : g.out_rows) bytes += vec_bytes(row);
    for (const auto& row : g.in_rows) bytes += vec_bytes(row);
    for (const auto& row : g.in_vertices) bytes += vec_bytes(row);
    for (const auto& row : g.out_vertices) bytes += vec_bytes(row);
    for (const auto& chain : index.cover.chains) bytes += vec_bytes(chain);
    bytes += vec_bytes(index.cover.chain_of) + vec_bytes(index.cover.position) +
             vec_bytes(index.cover.rank) + vec_bytes(index.codes);
    const IndexLabels& l = index.labels;
    bytes += vec_bytes(l.out_pool) + vec_bytes(l.in_pool) + vec_bytes(l.own_pool) +
             vec_bytes(l.out_count) + vec_bytes(l.in_count) + vec_bytes(l.own_count) +
             vec_bytes(l.out_source) + vec_bytes(l.in_source);
    bytes += vec_bytes(index.topo.level) + vec_bytes(index.topo.sigma1) +
             vec_bytes(index.topo.sigma2);
    return bytes;
}

}  // namespace topchain
