#pragma once

// Query processing. DAG reachability checks, per visited vertex and in this
// order: same-chain code comparison, topological prunes (level and two
// orders), the ≫ no-reach test, the ⊕ reach test, then DFS over
// out-neighbors bounded by the query's time cutoff.
//
// Temporal queries locate their DAG entry points by binary search on the
// per-original copy lists. Queries between a vertex and itself never compare
// same-chain codes directly (chain order between an OUT and a later IN copy
// of one original includes pairs with no connecting path); they instead ask
// whether any out-of-chain neighbor of the chain suffix reaches the target.
//
// Queries are read-only; a Querier carries its own scratch, so concurrent
// queries need one Querier per thread.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "topchain/index.hpp"
#include "topchain/types.hpp"

namespace topchain {

// True iff some chain holds a code of A at or before a code of B: a witness
// that the A-vertex reaches the B-vertex through that chain.
inline bool oplus(std::span<const ChainCode> out_u, std::span<const ChainCode> in_v) {
    std::size_t i = 0, j = 0;
    while (i < out_u.size() && j < in_v.size()) {
        if (out_u[i].x < in_v[j].x) {
            ++i;
        } else if (out_u[i].x > in_v[j].x) {
            ++j;
        } else {
            if (out_u[i].y <= in_v[j].y) return true;
            ++i;
            ++j;
        }
    }
    return false;
}

namespace detail {

// Shared ≫ scan. Case (1): B holds a chain that A misses although A still
// holds some lower-ranked chain. Case (2): a shared chain where A's code
// fails `better` against B's.
template <typename Better>
inline bool gg_scan(std::span<const ChainCode> a, std::span<const ChainCode> b, Better better) {
    if (a.empty()) return false;
    std::uint32_t a_max_x = a.back().x;
    std::size_t i = 0;
    for (const ChainCode& r : b) {
        while (i < a.size() && a[i].x < r.x) ++i;
        if (i >= a.size() || a[i].x != r.x) {
            if (a_max_x > r.x) return true;  // Case (1)
        } else if (better(a[i].y, r.y)) {
            return true;  // Case (2)
        }
    }
    return false;
}

}  // namespace detail

// L_out(u) ≫ L_out(v): certifies u cannot reach v.
inline bool gg_out(std::span<const ChainCode> out_u, std::span<const ChainCode> out_v) {
    return detail::gg_scan(out_u, out_v, [](Time uy, Time vy) { return uy > vy; });
}

// L_in(v) ≫ L_in(u): certifies u cannot reach v.
inline bool gg_in(std::span<const ChainCode> in_v, std::span<const ChainCode> in_u) {
    return detail::gg_scan(in_v, in_u, [](Time vy, Time uy) { return vy < uy; });
}

struct ArrivalAnswer {
    std::optional<Time> time;
    bool trivial = false;  // a == b answered by the empty-path convention
};

struct DurationAnswer {
    std::optional<Time> duration;
    bool trivial = false;
};

class Querier {
public:
    explicit Querier(const Index& index, bool use_topo = true)
        : index_(&index), use_topo_(use_topo) {}

    // u -> v in the transformed graph, ignoring vertices past `cutoff`.
    bool reach_dag(DagId u, DagId v, Time cutoff = kInfiniteTime) {
        const TransformedGraph& g = index_->graph;
        switch (check(u, v)) {
            case Verdict::Reaches:
                return true;
            case Verdict::Pruned:
                return false;
            case Verdict::Unknown:
                break;
        }
        next_epoch();
        mark_[u] = epoch_;
        stack_.clear();
        stack_.push_back(u);
        while (!stack_.empty()) {
            DagId z = stack_.back();
            stack_.pop_back();
            for (DagId w : g.out(z)) {
                if (g.time[w] > cutoff || mark_[w] == epoch_) continue;
                mark_[w] = epoch_;
                switch (check(w, v)) {
                    case Verdict::Reaches:
                        return true;
                    case Verdict::Pruned:
                        break;
                    case Verdict::Unknown:
                        stack_.push_back(w);
                        break;
                }
            }
        }
        return false;
    }

    bool reach(Vertex a, Vertex b, TimeInterval window) {
        validate(a, b);
        if (!window.valid()) return false;
        auto u = locate_out(index_->graph, a, window.begin);
        auto v = locate_in(index_->graph, b, window.end);
        if (!u || !v) return false;
        const TransformedGraph& g = index_->graph;
        if (g.time[*u] > window.end || g.time[*v] <= window.begin) return false;
        if (a == b) return round_trip(*u, *v, window.end);
        return reach_dag(*u, *v, window.end);
    }

    ArrivalAnswer earliest_arrival(Vertex a, Vertex b, TimeInterval window) {
        validate(a, b);
        if (!window.valid()) return {};
        if (a == b) return {window.begin, true};
        auto u = locate_out(index_->graph, a, window.begin);
        if (!u || index_->graph.time[*u] > window.end) return {};
        return {earliest_from(*u, b, index_->graph.time[*u], window.end), false};
    }

    DurationAnswer min_duration(Vertex a, Vertex b, TimeInterval window) {
        validate(a, b);
        if (!window.valid()) return {};
        if (a == b) return {Time{0}, true};
        const TransformedGraph& g = index_->graph;

        std::optional<Time> best;
        std::optional<Time> last_arrival;  // nondecreasing as the start grows
        for (DagId u : g.out_vertices[a]) {
            Time start = g.time[u];
            if (start < window.begin) continue;
            if (start > window.end) break;
            if (best && last_arrival && start <= *last_arrival && *last_arrival - start >= *best)
                continue;  // cannot beat the best duration found so far
            std::optional<Time> arrival = earliest_from(u, b, start, window.end);
            if (!arrival) break;  // later departures see strictly fewer paths
            last_arrival = arrival;
            Time duration = *arrival - start;
            if (!best || duration < *best) best = duration;
        }
        return {best, false};
    }

private:
    enum class Verdict { Reaches, Pruned, Unknown };

    Verdict check(DagId z, DagId v) {
        const Index& index = *index_;
        const ChainCode zc = index.codes[z], vc = index.codes[v];
        if (zc.x == vc.x) return zc.y <= vc.y ? Verdict::Reaches : Verdict::Pruned;
        if (use_topo_ && index.topo.valid) {
            if (index.topo.level[z] >= index.topo.level[v]) return Verdict::Pruned;
            if (index.topo.sigma1[z] > index.topo.sigma1[v]) return Verdict::Pruned;
            if (index.topo.sigma2[z] > index.topo.sigma2[v]) return Verdict::Pruned;
        }
        auto out_z = index.out_labels(z);
        auto in_v = index.in_labels(v);
        if (gg_out(out_z, index.out_labels(v)) || gg_in(in_v, index.in_labels(z)))
            return Verdict::Pruned;
        if (oplus(out_z, in_v)) return Verdict::Reaches;
        return Verdict::Unknown;
    }

    // a == b: does the chain suffix starting at u escape and come back to v?
    bool round_trip(DagId u, DagId v, Time cutoff) {
        const TransformedGraph& g = index_->graph;
        const ChainCover& cover = index_->cover;
        const auto& chain = cover.chains[cover.chain_of[u]];
        for (std::size_t i = cover.position[u]; i < chain.size(); ++i) {
            DagId from = chain[i];
            if (g.time[from] > cutoff) break;
            for (DagId w : g.out(from)) {
                if (index_->codes[w].x == index_->codes[u].x) {
                    // an OUT -> IN edge inside one original's chain is a
                    // self-loop cross edge: an immediate round trip
                    if (g.kind[from] == VertexKind::Out && g.kind[w] == VertexKind::In &&
                        g.time[w] <= cutoff)
                        return true;
                    continue;
                }
                if (g.time[w] > cutoff) continue;
                if (reach_dag(w, v, cutoff)) return true;
            }
        }
        return false;
    }

    // Earliest IN copy of b in [lo, hi] reachable from u. Reachability over
    // the candidate list is monotone thanks to b's in-chain, so after probing
    // the last candidate a binary search finds the first reachable one.
    std::optional<Time> earliest_from(DagId u, Vertex b, Time lo, Time hi) {
        const TransformedGraph& g = index_->graph;
        const auto& ids = g.in_vertices[b];
        auto first = std::lower_bound(ids.begin(), ids.end(), lo,
                                      [&](DagId d, Time tm) { return g.time[d] < tm; });
        auto last = std::upper_bound(first, ids.end(), hi,
                                     [&](Time tm, DagId d) { return tm < g.time[d]; });
        if (first == last) return std::nullopt;
        std::size_t lo_i = static_cast<std::size_t>(first - ids.begin());
        std::size_t hi_i = static_cast<std::size_t>(last - ids.begin()) - 1;
        if (!reach_dag(u, ids[hi_i], g.time[ids[hi_i]])) return std::nullopt;
        while (lo_i < hi_i) {
            std::size_t mid = lo_i + (hi_i - lo_i) / 2;
            if (reach_dag(u, ids[mid], g.time[ids[mid]]))
                hi_i = mid;
            else
                lo_i = mid + 1;
        }
        return g.time[ids[lo_i]];
    }

    void validate(Vertex a, Vertex b) const {
        if (a >= index_->graph.original_count || b >= index_->graph.original_count)
            throw std::invalid_argument("query: unknown vertex id");
    }

    void next_epoch() {
        mark_.resize(index_->graph.size(), 0);
        if (++epoch_ == 0) {
            std::fill(mark_.begin(), mark_.end(), 0);
            epoch_ = 1;
        }
    }

    const Index* index_;
    bool use_topo_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<DagId> stack_;
};

}  // namespace topchain
