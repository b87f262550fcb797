#pragma once

// Top-k chain labels. For every DAG vertex v, L_out(v) holds the chain codes
// of the first vertex v reaches in each of the k best-ranked chains it
// reaches at all; L_in(v) symmetrically holds last-reaching codes. Both sets
// are sorted by chain rank and hold at most one code per chain. Built in one
// pass over a topological order per side.
//
// Label reduction keeps only L_out on OUT copies and L_in on IN copies; the
// missing side is read from the time-adjacent partner copy of the same
// original vertex (or falls back to the vertex's own code when no partner
// exists, which is exact because nothing else reaches / is reachable then).

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "topchain/chains.hpp"
#include "topchain/transform.hpp"
#include "topchain/types.hpp"

namespace topchain {

enum class LabelSide { Out, In };

// Merge `src` into dest[0..dest_count), keeping at most `cap` codes with the
// smallest chain ranks. A same-chain collision keeps the smaller y when
// keep_min_y (first-reachable, out side), else the larger y (last-reaching,
// in side). Both inputs sorted by x. Returns whether dest changed.
namespace detail {

// Shared top-k merge core. Code is ChainCode or its 32-bit packed twin.
template <typename Code>
inline bool merge_codes(Code* dest, std::uint32_t& dest_count, const Code* src,
                        std::uint32_t src_count, std::uint32_t cap, bool keep_min_y,
                        Code* scratch) {
    Code* out = scratch;
    std::uint32_t n = 0;
    std::size_t i = 0, j = 0;
    // an element taken from src alone always lands where dest held a larger
    // rank (or nothing), so those branches are what make the result differ
    bool changed = false;
    while (n < cap && (i < dest_count || j < src_count)) {
        if (i < dest_count && (j >= src_count || dest[i].x < src[j].x)) {
            out[n++] = dest[i++];
        } else if (j < src_count && (i >= dest_count || src[j].x < dest[i].x)) {
            out[n++] = src[j++];
            changed = true;
        } else {
            auto y = keep_min_y ? std::min(dest[i].y, src[j].y) : std::max(dest[i].y, src[j].y);
            changed |= y != dest[i].y;
            out[n++] = {dest[i].x, y};
            ++i;
            ++j;
        }
    }
    if (!changed) return false;
    std::copy_n(out, n, dest);
    dest_count = n;
    return true;
}

}  // namespace detail

inline bool merge_topk_into(ChainCode* dest, std::uint32_t& dest_count,
                            std::span<const ChainCode> src, std::uint32_t cap, bool keep_min_y,
                            std::vector<ChainCode>& scratch) {
    if (src.empty() || cap == 0) return false;
    scratch.resize(cap);
    return detail::merge_codes(dest, dest_count, src.data(),
                               static_cast<std::uint32_t>(src.size()), cap, keep_min_y,
                               scratch.data());
}

// Convenience k-way form: folds the inputs pairwise, which yields the same
// top-k because selection by smallest x with per-chain y aggregation is
// associative.
inline std::vector<ChainCode> merge_topk(const std::vector<std::vector<ChainCode>>& sets,
                                         std::uint32_t k, LabelSide side) {
    std::size_t bound = 0;
    for (const auto& s : sets) bound += s.size();
    std::uint32_t cap = static_cast<std::uint32_t>(std::min<std::size_t>(bound, k));
    std::vector<ChainCode> result(cap);
    std::uint32_t count = 0;
    std::vector<ChainCode> scratch;
    for (const auto& s : sets)
        merge_topk_into(result.data(), count, std::span<const ChainCode>(s), cap,
                        side == LabelSide::Out, scratch);
    result.resize(count);
    return result;
}

struct IndexLabels {
    std::uint32_t cap = 0;  // slots per vertex: min(k, chain count)
    bool reduced = false;

    // unreduced storage: cap slots per vertex in both pools
    std::vector<ChainCode> out_pool, in_pool;
    std::vector<std::uint32_t> out_count, in_count;

    // reduced storage: each vertex owns the side matching its kind
    std::vector<ChainCode> own_pool;
    std::vector<std::uint32_t> own_count;
    std::vector<DagId> out_source, in_source;  // supplier of the non-owned side

    std::size_t total_entries() const {
        std::size_t total = 0;
        if (reduced) {
            for (std::uint32_t c : own_count) total += c;
        } else {
            for (std::uint32_t c : out_count) total += c;
            for (std::uint32_t c : in_count) total += c;
        }
        return total;
    }
};

namespace detail {

// 32-bit twin used for the build passes whenever every order key fits; it
// halves the random traffic of the merge sweeps.
struct PackedCode {
    std::uint32_t x;
    std::uint32_t y;
};

// Both passes work on strided rows of cap + 1 codes whose first entry holds
// the set size, so visiting a neighbor touches one contiguous row.
template <typename Code>
inline void run_label_passes(const TransformedGraph& g, const std::vector<Code>& own,
                             std::uint32_t cap, const std::vector<DagId>& topo_order,
                             std::vector<Code>& out_pool, std::vector<Code>& in_pool) {
    const std::size_t n = g.size();
    const std::size_t stride = cap + 1;
    out_pool.resize(stride * n);
    in_pool.resize(stride * n);
    std::vector<Code> scratch(cap);

    // prefetch the rows that the vertex a couple of steps ahead will merge
    auto fetch_ahead = [&](const std::vector<Code>& pool, DagId v, bool out_side) {
        for (DagId u : out_side ? g.out(v) : g.in(v))
            __builtin_prefetch(&pool[static_cast<std::size_t>(u) * stride]);
    };

    for (std::size_t idx = topo_order.size(); idx-- > 0;) {
        DagId v = topo_order[idx];
        if (idx >= 2) fetch_ahead(out_pool, topo_order[idx - 2], true);
        Code* vrow = &out_pool[static_cast<std::size_t>(v) * stride];
        vrow[0].x = 1;
        vrow[1] = own[v];
        std::uint32_t count = 1;
        for (DagId u : g.out(v)) {
            const Code* urow = &out_pool[static_cast<std::size_t>(u) * stride];
            merge_codes(vrow + 1, count, urow + 1, urow[0].x, cap, true, scratch.data());
        }
        vrow[0].x = count;
    }
    for (std::size_t idx = 0; idx < topo_order.size(); ++idx) {
        DagId v = topo_order[idx];
        if (idx + 2 < topo_order.size()) fetch_ahead(in_pool, topo_order[idx + 2], false);
        Code* vrow = &in_pool[static_cast<std::size_t>(v) * stride];
        vrow[0].x = 1;
        vrow[1] = own[v];
        std::uint32_t count = 1;
        for (DagId u : g.in(v)) {
            const Code* urow = &in_pool[static_cast<std::size_t>(u) * stride];
            merge_codes(vrow + 1, count, urow + 1, urow[0].x, cap, false, scratch.data());
        }
        vrow[0].x = count;
    }
}

inline bool codes_fit_32bit(const std::vector<ChainCode>& codes) {
    for (const ChainCode& c : codes)
        if (c.y > std::numeric_limits<std::uint32_t>::max()) return false;
    return true;
}

inline std::vector<PackedCode> pack_codes(const std::vector<ChainCode>& codes) {
    std::vector<PackedCode> packed(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i)
        packed[i] = {codes[i].x, static_cast<std::uint32_t>(codes[i].y)};
    return packed;
}

}  // namespace detail

inline IndexLabels build_labels(const TransformedGraph& g, const std::vector<ChainCode>& codes,
                                std::uint32_t k, const std::vector<DagId>& topo_order,
                                std::uint32_t chain_count) {
    if (k == 0) throw std::invalid_argument("build_labels: k must be >= 1");
    IndexLabels labels;
    labels.cap = std::min(k, std::max<std::uint32_t>(chain_count, 1));
    const std::size_t n = g.size();

    const std::size_t stride = labels.cap + 1;
    labels.out_pool.resize(labels.cap * n);
    labels.in_pool.resize(labels.cap * n);
    labels.out_count.assign(n, 0);
    labels.in_count.assign(n, 0);
    auto unpack = [&](const auto& rows, std::vector<ChainCode>& pool,
                      std::vector<std::uint32_t>& count) {
        for (std::size_t v = 0; v < n; ++v) {
            const auto* row = &rows[v * stride];
            count[v] = row[0].x;
            for (std::uint32_t i = 0; i < count[v]; ++i)
                pool[v * labels.cap + i] = {row[1 + i].x, row[1 + i].y};
        }
    };
    if (detail::codes_fit_32bit(codes)) {
        std::vector<detail::PackedCode> out_rows, in_rows;
        detail::run_label_passes(g, detail::pack_codes(codes), labels.cap, topo_order, out_rows,
                                 in_rows);
        unpack(out_rows, labels.out_pool, labels.out_count);
        unpack(in_rows, labels.in_pool, labels.in_count);
    } else {
        std::vector<ChainCode> out_rows, in_rows;
        detail::run_label_passes(g, codes, labels.cap, topo_order, out_rows, in_rows);
        unpack(out_rows, labels.out_pool, labels.out_count);
        unpack(in_rows, labels.in_pool, labels.in_count);
    }
    return labels;
}

// Time-adjacent partner copies used to resolve the non-owned label side.
inline DagId reduction_out_partner(const TransformedGraph& g, DagId v) {
    // for an IN copy: earliest OUT copy of the same original at or after it
    auto out = locate_out(g, g.original[v], g.time[v]);
    return out ? *out : kNoDagVertex;
}

inline DagId reduction_in_partner(const TransformedGraph& g, DagId v) {
    // for an OUT copy: latest IN copy of the same original at or before it
    auto in = locate_in(g, g.original[v], g.time[v]);
    return in ? *in : kNoDagVertex;
}

namespace detail {

// Partner redirects by one time-ordered sweep per original. Assumes the
// owned-side identity entries are already in place.
inline void assign_partners(IndexLabels& labels, const TransformedGraph& g) {
    for (Vertex orig = 0; orig < g.original_count; ++orig) {
        const auto& ins = g.in_vertices[orig];
        const auto& outs = g.out_vertices[orig];
        std::size_t o = 0;
        for (DagId v : ins) {  // earliest departure at or after the arrival
            while (o < outs.size() && g.time[outs[o]] < g.time[v]) ++o;
            labels.out_source[v] = o < outs.size() ? outs[o] : kNoDagVertex;
        }
        std::size_t i = ins.size();
        for (std::size_t oi = outs.size(); oi-- > 0;) {  // latest arrival at or before
            while (i > 0 && g.time[ins[i - 1]] > g.time[outs[oi]]) --i;
            labels.in_source[outs[oi]] = i > 0 ? ins[i - 1] : kNoDagVertex;
        }
    }
}

}  // namespace detail

inline void reduce_labels(IndexLabels& labels, const TransformedGraph& g) {
    if (labels.reduced) return;
    const std::size_t n = g.size();
    // the out pool becomes the owned pool in place; IN copies overwrite their
    // slots with their in-sets
    labels.own_pool = std::move(labels.out_pool);
    labels.own_count = std::move(labels.out_count);
    labels.out_source.assign(n, kNoDagVertex);
    labels.in_source.assign(n, kNoDagVertex);

    for (DagId v = 0; v < n; ++v) {
        if (g.kind[v] == VertexKind::Out) {
            labels.out_source[v] = v;
        } else {
            std::copy_n(&labels.in_pool[static_cast<std::size_t>(v) * labels.cap],
                        labels.in_count[v],
                        &labels.own_pool[static_cast<std::size_t>(v) * labels.cap]);
            labels.own_count[v] = labels.in_count[v];
            labels.in_source[v] = v;
        }
    }
    detail::assign_partners(labels, g);
    labels.out_pool = {};
    labels.in_pool = {};
    labels.out_count = {};
    labels.in_count = {};
    labels.reduced = true;
}

// Build-and-reduce in one step: when the packed passes apply, only the owned
// side is ever expanded to full-width codes.
inline IndexLabels build_reduced_labels(const TransformedGraph& g,
                                        const std::vector<ChainCode>& codes, std::uint32_t k,
                                        const std::vector<DagId>& topo_order,
                                        std::uint32_t chain_count) {
    if (!detail::codes_fit_32bit(codes)) {
        IndexLabels labels = build_labels(g, codes, k, topo_order, chain_count);
        reduce_labels(labels, g);
        return labels;
    }
    if (k == 0) throw std::invalid_argument("build_labels: k must be >= 1");
    IndexLabels labels;
    labels.cap = std::min(k, std::max<std::uint32_t>(chain_count, 1));
    const std::size_t n = g.size();

    std::vector<detail::PackedCode> out_rows, in_rows;
    detail::run_label_passes(g, detail::pack_codes(codes), labels.cap, topo_order, out_rows,
                             in_rows);

    const std::size_t stride = labels.cap + 1;
    labels.own_pool.resize(labels.cap * n);
    labels.own_count.assign(n, 0);
    labels.out_source.assign(n, kNoDagVertex);
    labels.in_source.assign(n, kNoDagVertex);
    for (DagId v = 0; v < n; ++v) {
        bool is_out = g.kind[v] == VertexKind::Out;
        const detail::PackedCode* row = &(is_out ? out_rows : in_rows)[v * stride];
        const std::size_t base = static_cast<std::size_t>(v) * labels.cap;
        for (std::uint32_t i = 0; i < row[0].x; ++i)
            labels.own_pool[base + i] = {row[1 + i].x, row[1 + i].y};
        labels.own_count[v] = row[0].x;
        (is_out ? labels.out_source : labels.in_source)[v] = v;
    }
    detail::assign_partners(labels, g);
    labels.reduced = true;
    return labels;
}

struct TopoLabels {
    std::vector<std::uint32_t> level;   // longest in-path depth; sources get 1
    std::vector<std::uint32_t> sigma1;  // position in DFS topological order
    std::vector<std::uint32_t> sigma2;  // same, with out-neighbors visited reversed
    bool valid = false;
};

namespace detail {

// Reverse-postorder positions from an iterative DFS over all roots in
// ascending id. Positions are 1..n and satisfy sigma(u) < sigma(v) for every
// edge (u, v).
inline std::vector<std::uint32_t> dfs_positions(const TransformedGraph& g, bool reversed) {
    const std::uint32_t n = g.size();
    std::vector<std::uint32_t> sigma(n, 0);
    std::vector<bool> visited(n, false);
    std::vector<std::pair<DagId, std::uint32_t>> stack;
    std::uint32_t next = n;
    for (DagId root = 0; root < n; ++root) {
        if (visited[root]) continue;
        visited[root] = true;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [v, child] = stack.back();
            auto row = g.out(v);
            if (child < row.size()) {
                DagId w = reversed ? row[row.size() - 1 - child] : row[child];
                ++child;
                if (!visited[w]) {
                    visited[w] = true;
                    stack.emplace_back(w, 0);
                }
            } else {
                sigma[v] = next--;
                stack.pop_back();
            }
        }
    }
    return sigma;
}

}  // namespace detail

inline TopoLabels build_topo_labels_from_order(const TransformedGraph& g,
                                               const std::vector<DagId>& topo_order) {
    TopoLabels t;
    t.level.assign(g.size(), 1);
    for (DagId v : topo_order)
        for (DagId w : g.out(v)) t.level[w] = std::max(t.level[w], t.level[v] + 1);
    t.sigma1 = detail::dfs_positions(g, false);
    t.sigma2 = detail::dfs_positions(g, true);
    t.valid = true;
    return t;
}

inline TopoLabels build_topo_labels(const TransformedGraph& g) {
    TopoSortResult topo = verify_dag(g);
    if (!topo.ok()) throw std::runtime_error("build_topo_labels: graph has a cycle");
    return build_topo_labels_from_order(g, topo.order);
}

}  // namespace topchain
