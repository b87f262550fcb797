#pragma once

// Versioned text format for a built index. Sections: HEADER (counts and
// build options), RANKS (per chain), VERTICES (original, time, kind, chain,
// order key), EDGES, LABELS (owned sets only when reduced), TOPO. Everything
// except the header timestamp is a deterministic function of the index, and
// a loaded index answers every query exactly like the saved one.

#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "topchain/index.hpp"
#include "topchain/labels.hpp"

namespace topchain {

inline constexpr const char* kIndexMagic = "TOPCHAIN-INDEX v1";

inline void save_index(const Index& index, std::ostream& out) {
    const TransformedGraph& g = index.graph;
    const IndexLabels& l = index.labels;

    out << kIndexMagic << "\n";
    out << "timestamp " << static_cast<std::uint64_t>(std::time(nullptr)) << "\n";
    out << "originals " << g.original_count << "\n";
    out << "dag_vertices " << g.size() << "\n";
    out << "dag_edges " << g.edge_count << "\n";
    out << "k " << index.options.k << "\n";
    out << "codes " << (index.options.codes == CodeMode::Timestamp ? "timestamp" : "position")
        << "\n";
    out << "rank " << (index.options.rank == RankMode::Degree ? "degree" : "random") << "\n";
    out << "chain_mode "
        << (index.options.chains == ChainMode::MergedTemporal ? "merged" : "greedy") << "\n";
    out << "seed " << index.options.seed << "\n";
    out << "reduced " << (l.reduced ? 1 : 0) << "\n";
    out << "topo_valid " << (index.topo.valid ? 1 : 0) << "\n";
    out << "chains " << index.cover.chain_count() << "\n";

    out << "RANKS\n";
    for (std::uint32_t c = 0; c < index.cover.chain_count(); ++c)
        out << index.cover.rank[c] << "\n";

    out << "VERTICES\n";
    for (DagId v = 0; v < g.size(); ++v)
        out << g.original[v] << " " << g.time[v] << " "
            << (g.kind[v] == VertexKind::In ? "I" : "O") << " " << index.cover.chain_of[v] << " "
            << index.codes[v].y << "\n";

    out << "EDGES\n";
    for (DagId v = 0; v < g.size(); ++v)
        for (DagId w : g.out(v)) out << v << " " << w << "\n";

    out << "LABELS\n";
    auto write_set = [&out](std::span<const ChainCode> set) {
        out << set.size();
        for (const ChainCode& c : set) out << " " << c.x << " " << c.y;
    };
    for (DagId v = 0; v < g.size(); ++v) {
        if (l.reduced) {
            write_set({&l.own_pool[static_cast<std::size_t>(v) * l.cap], l.own_count[v]});
        } else {
            write_set({&l.out_pool[static_cast<std::size_t>(v) * l.cap], l.out_count[v]});
            out << " ";
            write_set({&l.in_pool[static_cast<std::size_t>(v) * l.cap], l.in_count[v]});
        }
        out << "\n";
    }

    out << "TOPO\n";
    for (DagId v = 0; v < g.size(); ++v) {
        if (index.topo.valid)
            out << index.topo.level[v] << " " << index.topo.sigma1[v] << " "
                << index.topo.sigma2[v] << "\n";
        else
            out << "0 0 0\n";
    }
    out << "END\n";
}

namespace detail {

class IndexReader {
public:
    explicit IndexReader(std::istream& in) : in_(in) {}

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line)) throw ParseError(line_no_ + 1, "unexpected end of index");
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    void expect(const std::string& want) {
        std::string got = next_line();
        if (got != want) throw ParseError(line_no_, "expected `" + want + "`");
    }

    template <typename T>
    T field(const std::string& name) {
        std::istringstream ss(next_line());
        std::string key;
        T value{};
        if (!(ss >> key >> value) || key != name)
            throw ParseError(line_no_, "expected `" + name + "` field");
        return value;
    }

    std::size_t line() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

}  // namespace detail

inline Index load_index(std::istream& in) {
    detail::IndexReader reader(in);
    reader.expect(kIndexMagic);
    reader.field<std::uint64_t>("timestamp");

    Index index;
    TransformedGraph& g = index.graph;
    g.original_count = reader.field<std::uint32_t>("originals");
    const std::uint32_t n = reader.field<std::uint32_t>("dag_vertices");
    const std::uint64_t edge_count = reader.field<std::uint64_t>("dag_edges");
    index.options.k = reader.field<std::uint32_t>("k");
    std::string codes_mode = reader.field<std::string>("codes");
    index.options.codes = codes_mode == "timestamp" ? CodeMode::Timestamp : CodeMode::Position;
    index.options.rank =
        reader.field<std::string>("rank") == "degree" ? RankMode::Degree : RankMode::Random;
    index.options.chains = reader.field<std::string>("chain_mode") == "merged"
                               ? ChainMode::MergedTemporal
                               : ChainMode::Greedy;
    index.options.seed = reader.field<std::uint64_t>("seed");
    bool reduced = reader.field<int>("reduced") != 0;
    bool topo_valid = reader.field<int>("topo_valid") != 0;
    const std::uint32_t chain_count = reader.field<std::uint32_t>("chains");
    index.options.reduce = reduced;

    ChainCover& cover = index.cover;
    cover.temporal = index.options.chains == ChainMode::MergedTemporal;
    reader.expect("RANKS");
    cover.rank.resize(chain_count);
    for (std::uint32_t c = 0; c < chain_count; ++c) {
        std::istringstream ss(reader.next_line());
        if (!(ss >> cover.rank[c])) throw ParseError(reader.line(), "bad chain rank");
    }

    reader.expect("VERTICES");
    g.original.resize(n);
    g.time.resize(n);
    g.kind.resize(n);
    g.in_vertices.assign(g.original_count, {});
    g.out_vertices.assign(g.original_count, {});
    cover.chain_of.resize(n);
    cover.position.assign(n, 0);
    cover.chains.assign(chain_count, {});
    index.codes.resize(n);
    for (DagId v = 0; v < n; ++v) {
        std::istringstream ss(reader.next_line());
        std::string kind;
        std::uint32_t chain;
        Time y;
        if (!(ss >> g.original[v] >> g.time[v] >> kind >> chain >> y) || chain >= chain_count ||
            g.original[v] >= g.original_count || (kind != "I" && kind != "O"))
            throw ParseError(reader.line(), "bad vertex record");
        g.kind[v] = kind == "I" ? VertexKind::In : VertexKind::Out;
        cover.chain_of[v] = chain;
        index.codes[v] = {cover.rank[chain], y};
        cover.chains[chain].push_back(v);
        auto& ids = g.kind[v] == VertexKind::In ? g.in_vertices[g.original[v]]
                                                : g.out_vertices[g.original[v]];
        ids.push_back(v);
    }

    auto by_time = [&g](DagId a, DagId b) {
        if (g.time[a] != g.time[b]) return g.time[a] < g.time[b];
        return g.kind[a] == VertexKind::In && g.kind[b] == VertexKind::Out;
    };
    for (auto& ids : g.in_vertices) std::sort(ids.begin(), ids.end(), by_time);
    for (auto& ids : g.out_vertices) std::sort(ids.begin(), ids.end(), by_time);
    cover.chain_of_original.assign(g.original_count, kNoChain);
    for (std::uint32_t c = 0; c < chain_count; ++c) {
        auto& chain = cover.chains[c];
        std::sort(chain.begin(), chain.end(), by_time);
        for (std::size_t p = 0; p < chain.size(); ++p)
            cover.position[chain[p]] = static_cast<std::uint32_t>(p);
        if (cover.temporal && !chain.empty())
            cover.chain_of_original[g.original[chain.front()]] = c;
    }

    reader.expect("EDGES");
    std::vector<std::pair<DagId, DagId>> edges;
    edges.reserve(edge_count);
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        std::istringstream ss(reader.next_line());
        DagId from, to;
        if (!(ss >> from >> to) || from >= n || to >= n)
            throw ParseError(reader.line(), "bad edge record");
        edges.emplace_back(from, to);
    }
    detail::freeze_edges(g, edges);

    reader.expect("LABELS");
    IndexLabels& l = index.labels;
    l.reduced = reduced;
    l.cap = std::min(index.options.k, std::max<std::uint32_t>(chain_count, 1));
    auto read_set = [&](std::istringstream& ss, ChainCode* slot, std::uint32_t& count) {
        std::uint32_t size;
        if (!(ss >> size) || size > l.cap) throw ParseError(reader.line(), "bad label set");
        for (std::uint32_t i = 0; i < size; ++i)
            if (!(ss >> slot[i].x >> slot[i].y)) throw ParseError(reader.line(), "bad label code");
        count = size;
    };
    if (reduced) {
        l.own_pool.resize(static_cast<std::size_t>(l.cap) * n);
        l.own_count.assign(n, 0);
        l.out_source.assign(n, kNoDagVertex);
        l.in_source.assign(n, kNoDagVertex);
        for (DagId v = 0; v < n; ++v) {
            std::istringstream ss(reader.next_line());
            read_set(ss, &l.own_pool[static_cast<std::size_t>(v) * l.cap], l.own_count[v]);
            if (g.kind[v] == VertexKind::Out) {
                l.out_source[v] = v;
                l.in_source[v] = reduction_in_partner(g, v);
            } else {
                l.in_source[v] = v;
                l.out_source[v] = reduction_out_partner(g, v);
            }
        }
    } else {
        l.out_pool.resize(static_cast<std::size_t>(l.cap) * n);
        l.in_pool.resize(static_cast<std::size_t>(l.cap) * n);
        l.out_count.assign(n, 0);
        l.in_count.assign(n, 0);
        for (DagId v = 0; v < n; ++v) {
            std::istringstream ss(reader.next_line());
            read_set(ss, &l.out_pool[static_cast<std::size_t>(v) * l.cap], l.out_count[v]);
            read_set(ss, &l.in_pool[static_cast<std::size_t>(v) * l.cap], l.in_count[v]);
        }
    }

    reader.expect("TOPO");
    index.topo.level.resize(n);
    index.topo.sigma1.resize(n);
    index.topo.sigma2.resize(n);
    for (DagId v = 0; v < n; ++v) {
        std::istringstream ss(reader.next_line());
        if (!(ss >> index.topo.level[v] >> index.topo.sigma1[v] >> index.topo.sigma2[v]))
            throw ParseError(reader.line(), "bad topo record");
    }
    index.topo.valid = topo_valid;
    reader.expect("END");
    return index;
}

}  // namespace topchain
