// Command-line front end: build and serialize indexes, answer query batches,
// apply insertion streams, benchmark index variants, and report graph sizes.
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "topchain/topchain.hpp"

namespace {

using namespace topchain;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

TemporalGraph load_graph(const std::string& path) {
    std::ifstream in = open_input(path);
    return parse_edge_list(in);
}

Index load_index_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return load_index(in);
}

void write_index_file(const Index& index, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    save_index(index, out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

struct QueryLine {
    Vertex a = 0, b = 0;
    TimeInterval window;
};

std::vector<QueryLine> parse_queries(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<QueryLine> queries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#') continue;
        QueryLine q;
        std::string omega;
        std::uint64_t a, b;
        std::istringstream head(first);
        if (!(head >> a) || !(ss >> b >> q.window.begin >> omega))
            throw ParseError(line_no, "malformed query line (expected `a b talpha tomega`)");
        q.a = static_cast<Vertex>(a);
        q.b = static_cast<Vertex>(b);
        q.window.end = omega == "inf" ? kInfiniteTime : std::stoull(omega);
        queries.push_back(q);
    }
    return queries;
}

int cmd_build(const std::string& input, const std::string& output, BuildOptions options) {
    TemporalGraph g = load_graph(input);
    auto start = Clock::now();
    Index index = build_index(g, options);
    double built_ms = ms_since(start);
    write_index_file(index, output);
    std::cout << "build_ms=" << built_ms << " dag_vertices=" << index.graph.size()
              << " dag_edges=" << index.graph.edge_count
              << " label_entries=" << index.labels.total_entries()
              << " index_bytes=" << index_memory_bytes(index) << "\n";
    return 0;
}

int cmd_query(const std::string& index_path, const std::string& type,
              const std::string& queries_path) {
    Index index = load_index_file(index_path);
    std::vector<QueryLine> queries = parse_queries(queries_path);
    Querier querier(index);
    bool any_error = false;

    auto start = Clock::now();
    std::ostringstream out;
    for (const QueryLine& q : queries) {
        try {
            if (type == "reach") {
                out << (querier.reach(q.a, q.b, q.window) ? 1 : 0) << "\n";
            } else if (type == "ea") {
                auto ans = querier.earliest_arrival(q.a, q.b, q.window);
                if (ans.time)
                    out << *ans.time << "\n";
                else
                    out << "-\n";
            } else {
                auto ans = querier.min_duration(q.a, q.b, q.window);
                if (ans.duration)
                    out << *ans.duration << "\n";
                else
                    out << "-\n";
            }
        } catch (const std::invalid_argument&) {
            out << "ERR\n";
            any_error = true;
        }
    }
    double total_ms = ms_since(start);
    std::cout << out.str();
    std::cout << "total_ms=" << total_ms << "\n";
    return any_error ? 2 : 0;
}

int cmd_update(const std::string& index_path, const std::string& stream_path,
               const std::string& mode_name) {
    Index index = load_index_file(index_path);
    TemporalGraph stream = [&] {
        std::ifstream in = open_input(stream_path);
        return parse_edge_list(in);
    }();
    UpdateMode mode = mode_name == "plus" ? UpdateMode::Plus : UpdateMode::Plain;

    Updater updater(index);
    auto start = Clock::now();
    for (const TemporalEdge& e : stream.edges) updater.insert(e, mode);
    double total_ms = ms_since(start);
    if (!index.topo.valid) refresh_topo(index);  // one refresh per batch in plain mode

    write_index_file(index, index_path);
    double average_us = stream.edges.empty() ? 0.0 : total_ms * 1000.0 / stream.edges.size();
    std::cout << "inserts=" << stream.edges.size() << " avg_insert_us=" << average_us << "\n";
    return 0;
}

int cmd_bench(const std::string& input, std::uint32_t k, std::uint64_t query_count,
              std::uint64_t seed, const std::string& variant) {
    TemporalGraph g = load_graph(input);
    BuildOptions options;
    options.k = k;
    options.seed = seed;
    if (variant == "tc1") {
        options.chains = ChainMode::Greedy;  // degree-ranked greedy chains
    } else if (variant == "tc2") {
        options.rank = RankMode::Random;  // merged chains, random ranks
    }

    auto start = Clock::now();
    Index index = build_index(g, options);
    double build_ms = ms_since(start);

    std::mt19937_64 rng(seed);
    Querier querier(index);
    std::uint64_t reachable = 0;
    start = Clock::now();
    for (std::uint64_t i = 0; i < query_count && g.vertex_count > 0; ++i) {
        Vertex a = static_cast<Vertex>(rng() % g.vertex_count);
        Vertex b = static_cast<Vertex>(rng() % g.vertex_count);
        reachable += querier.reach(a, b, {0, kInfiniteTime}) ? 1 : 0;
    }
    double query_ms = ms_since(start);

    std::cout << "variant=" << variant << " build_ms=" << build_ms
              << " index_bytes=" << index_memory_bytes(index) << " queries=" << query_count
              << " reachable=" << reachable << " query_ms=" << query_ms << "\n";
    return 0;
}

int cmd_stats(const std::string& input) {
    TemporalGraph g = load_graph(input);
    GraphStats s = stats(g);
    TransformedGraph t = transform(g);
    std::cout << s.vertices << " " << s.edges << " " << s.max_pair_multiplicity << " "
              << s.distinct_times << " " << t.size() << " " << t.edge_count << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TopChain temporal reachability index"};
    app.require_subcommand(1);

    std::string input, output, index_path, queries_path, stream_path;
    std::string type = "reach", mode = "plain", variant = "topchain";
    std::string rank = "degree", codes = "timestamp";
    bool no_reduce = false;
    std::uint32_t k = 5;
    std::uint64_t seed = 0, query_count = 1000;

    CLI::App* build = app.add_subcommand("build", "build an index from a temporal edge list");
    build->add_option("--input", input)->required();
    build->add_option("--output", output)->required();
    build->add_option("--k", k, "labels kept per side")->check(CLI::PositiveNumber);
    build->add_option("--rank", rank)->check(CLI::IsMember({"degree", "random"}));
    build->add_option("--codes", codes)->check(CLI::IsMember({"timestamp", "position"}));
    build->add_flag("--no-reduce", no_reduce, "keep both label sides on every vertex");
    build->add_option("--seed", seed, "seed for random ranking");

    CLI::App* query = app.add_subcommand("query", "answer a batch of queries");
    query->add_option("--index", index_path)->required();
    query->add_option("--type", type)->check(CLI::IsMember({"reach", "ea", "fastest"}));
    query->add_option("--queries", queries_path)->required();

    CLI::App* update = app.add_subcommand("update", "apply an edge insertion stream");
    update->add_option("--index", index_path)->required();
    update->add_option("--stream", stream_path)->required();
    update->add_option("--mode", mode)->check(CLI::IsMember({"plain", "plus"}));

    CLI::App* bench = app.add_subcommand("bench", "time one index variant");
    bench->add_option("--input", input)->required();
    bench->add_option("--k", k)->check(CLI::PositiveNumber);
    bench->add_option("--queries", query_count);
    bench->add_option("--seed", seed);
    bench->add_option("--variant", variant)->check(CLI::IsMember({"topchain", "tc1", "tc2"}));

    CLI::App* stats_cmd = app.add_subcommand("stats", "print graph and DAG sizes");
    stats_cmd->add_option("--input", input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*build) {
            BuildOptions options;
            options.k = k;
            options.rank = rank == "degree" ? RankMode::Degree : RankMode::Random;
            options.codes = codes == "timestamp" ? CodeMode::Timestamp : CodeMode::Position;
            options.reduce = !no_reduce;
            options.seed = seed;
            return cmd_build(input, output, options);
        }
        if (*query) return cmd_query(index_path, type, queries_path);
        if (*update) return cmd_update(index_path, stream_path, mode);
        if (*bench) return cmd_bench(input, k, query_count, seed, variant);
        if (*stats_cmd) return cmd_stats(input);
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
