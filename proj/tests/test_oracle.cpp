#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "test_support.hpp"
#include "topchain/oracle.hpp"

using namespace topchain;
using testsupport::example_graph;

TEST_CASE("oracle earliest arrival on the example", "[oracle]") {
    TemporalGraph g = example_graph();
    CHECK(oracle_earliest_arrival(g, 0, 3, {1, 10}) == Time{5});
    CHECK_FALSE(oracle_earliest_arrival(g, 0, 3, {1, 3}).has_value());
    CHECK(oracle_earliest_arrival(g, 0, 0, {4, 7}) == Time{4});  // empty-path convention
}

TEST_CASE("oracle reachability on the example", "[oracle]") {
    TemporalGraph g = example_graph();
    CHECK(oracle_reach(g, 0, 3, {2, 5}));
    CHECK_FALSE(oracle_reach(g, 3, 0, {0, kInfiniteTime}));  // d has no out-edges
    CHECK(oracle_reach(g, 0, 0, {4, 7}));                    // round trip a -> c -> a
    CHECK_FALSE(oracle_reach(g, 0, 0, {5, 7}));              // no departure at or after 5
}

TEST_CASE("oracle minimum duration on the example", "[oracle]") {
    TemporalGraph g = example_graph();
    CHECK(oracle_min_duration(g, 0, 3, {1, 10}) == Time{2});
    CHECK(oracle_min_duration(g, 0, 3, {1, 5}) == Time{3});
    CHECK_FALSE(oracle_min_duration(g, 3, 0, {0, kInfiniteTime}).has_value());
    CHECK(oracle_min_duration(g, 2, 2, {0, 10}) == Time{0});  // empty-path convention
}

TEST_CASE("generator is deterministic in the seed", "[oracle]") {
    GenParams p;
    p.vertices = 50;
    p.avg_degree = 10;
    p.max_pair_multiplicity = 5;
    p.seed = 42;
    TemporalGraph g1 = random_temporal_graph(p);
    TemporalGraph g2 = random_temporal_graph(p);
    CHECK(g1.edges == g2.edges);
    p.seed = 43;
    CHECK(random_temporal_graph(p).edges != g1.edges);
}

TEST_CASE("generator hits the requested size", "[oracle]") {
    GenParams p;
    p.vertices = 50;
    p.avg_degree = 10;
    p.max_pair_multiplicity = 50;
    p.seed = 7;
    TemporalGraph g = random_temporal_graph(p);
    CHECK(g.vertex_count == 50);
    CHECK(g.edges.size() >= 400);
    CHECK(g.edges.size() <= 600);
}

TEST_CASE("generator respects the pair multiplicity cap", "[oracle]") {
    GenParams p;
    p.vertices = 20;
    p.avg_degree = 12;
    p.max_pair_multiplicity = 1;
    p.seed = 11;
    TemporalGraph g = random_temporal_graph(p);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const TemporalEdge& e : g.edges) {
        CHECK(e.from != e.to);
        CHECK(seen.insert({e.from, e.to}).second);  // no parallel edges at cap 1
    }
}

TEST_CASE("reach and earliest arrival agree", "[oracle]") {
    GenParams p;
    p.vertices = 25;
    p.avg_degree = 6;
    p.max_pair_multiplicity = 3;
    p.max_travel = 5;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        p.seed = seed;
        TemporalGraph g = random_temporal_graph(p);
        std::mt19937_64 rng(seed + 100);
        for (int trial = 0; trial < 200; ++trial) {
            Vertex a = rng() % p.vertices, b = rng() % p.vertices;
            if (a == b) continue;
            Time lo = rng() % 100, hi = lo + rng() % 100;
            CHECK(oracle_reach(g, a, b, {lo, hi}) ==
                  oracle_earliest_arrival(g, a, b, {lo, hi}).has_value());
        }
    }
}

TEST_CASE("one-pass scan matches exhaustive path enumeration", "[oracle]") {
    GenParams p;
    p.vertices = 6;
    p.avg_degree = 2;  // ~12 temporal edges
    p.max_pair_multiplicity = 2;
    p.horizon = 12;
    p.max_travel = 3;
    std::vector<TimeInterval> windows = {{0, kInfiniteTime}, {0, 8}, {3, 9}, {5, 6}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        p.seed = seed;
        TemporalGraph g = random_temporal_graph(p);
        REQUIRE(g.edges.size() <= 12);
        for (TimeInterval w : windows) {
            for (Vertex a = 0; a < p.vertices; ++a) {
                for (Vertex b = 0; b < p.vertices; ++b) {
                    auto truth = testsupport::enumerate_paths(g, a, b, w);
                    if (a == b) {
                        CHECK(oracle_reach(g, a, b, w) == truth.reach);
                        continue;  // earliest/fastest use the empty-path convention
                    }
                    CHECK(oracle_reach(g, a, b, w) == truth.reach);
                    CHECK(oracle_earliest_arrival(g, a, b, w) == truth.earliest);
                    CHECK(oracle_min_duration(g, a, b, w) == truth.fastest);
                }
            }
        }
    }
}
