#include <algorithm>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "floodsim/topology.hpp"
#include "floodsim/topology_io.hpp"

using namespace floodsim;

namespace {

bool symmetric_and_simple(const OverlayGraph& g) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto nb = g.neighbors(v);
        if (!std::is_sorted(nb.begin(), nb.end())) return false;
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
        for (NodeId w : nb) {
            if (w == v || !g.has_edge(w, v)) return false;
        }
    }
    return true;
}

// Connectivity by a single traversal from node 0, independent of component_labels.
bool reaches_all_from_zero(const OverlayGraph& g) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.node_count();
}

}  // namespace

TEST_CASE("generated overlays are connected, symmetric and simple") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 2 + seed % 150 + 8;
        const auto g = generate_graph(n, {2, 8}, seed);
        REQUIRE(g.node_count() == n);
        CHECK(symmetric_and_simple(g));
        CHECK(reaches_all_from_zero(g));
        CHECK(is_connected(g));
    }
}

TEST_CASE("thousand-node overlay keeps almost every degree in bounds") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto g = generate_graph(1000, {2, 8}, seed);
        std::size_t in_bounds = 0;
        for (NodeId v = 0; v < 1000; ++v) in_bounds += (g.degree(v) >= 2 && g.degree(v) <= 8);
        CHECK(in_bounds >= 950);
        CHECK(reaches_all_from_zero(g));
    }
}

TEST_CASE("two nodes with degree one give K2") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = generate_graph(2, {1, 1}, seed);
        CHECK(g.edges() == std::vector<Edge>{{0, 1}});
    }
}

TEST_CASE("degree histogram is close to uniform over 2..8") {
    // 100 seeds x 50 nodes, chi-square against a flat histogram.
    std::vector<double> counts(7, 0.0);
    double total = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = generate_graph(50, {2, 8}, 1000 + seed);
        for (NodeId v = 0; v < 50; ++v) {
            auto d = g.degree(v);
            if (d >= 2 && d <= 8) counts[d - 2] += 1;
            total += 1;
        }
    }
    const double expected = total / 7.0;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    MESSAGE("degree chi-square = " << chi2);
    CHECK(chi2 < 22.46);  // 6 degrees of freedom, p = 0.001
}

TEST_CASE("infeasible degree specs are configuration errors") {
    CHECK_THROWS_AS(generate_graph(8, {2, 8}, 1), ConfigError);
    CHECK_THROWS_AS(generate_graph(1, {1, 1}, 1), ConfigError);
    CHECK_THROWS_AS(generate_graph(10, {0, 3}, 1), ConfigError);
    CHECK_THROWS_AS(generate_graph(10, {4, 3}, 1), ConfigError);
    CHECK_NOTHROW(generate_graph(9, {2, 8}, 1));
}

TEST_CASE("generation is a pure function of its inputs") {
    CHECK(generate_graph(300, {2, 8}, 42) == generate_graph(300, {2, 8}, 42));
    CHECK_FALSE(generate_graph(300, {2, 8}, 42) == generate_graph(300, {2, 8}, 43));
    const auto g = generate_graph(300, {2, 8}, 42);
    CHECK(place_replicas(g, 100, 7, 5) == place_replicas(g, 100, 7, 5));
}

TEST_CASE("from_edges rejects malformed edge lists") {
    const std::vector<Edge> loop{{1, 1}};
    const std::vector<Edge> dup{{0, 1}, {1, 0}};
    const std::vector<Edge> range{{0, 5}};
    CHECK_THROWS_AS(OverlayGraph::from_edges(3, loop), ConfigError);
    CHECK_THROWS_AS(OverlayGraph::from_edges(3, dup), ConfigError);
    CHECK_THROWS_AS(OverlayGraph::from_edges(3, range), ConfigError);
}

TEST_CASE("component labels split a disconnected graph") {
    const std::vector<Edge> edges{{0, 1}, {2, 3}};
    const auto g = OverlayGraph::from_edges(5, edges);
    CHECK(component_labels(g) == std::vector<std::uint32_t>{0, 0, 2, 2, 4});
    CHECK_FALSE(is_connected(g));
}

TEST_CASE("placement gives every object exactly RP distinct holders") {
    const auto g = generate_graph(1000, {2, 8}, 7);
    for (std::uint32_t rp : {1u, 2u, 8u, 32u, 128u, 512u}) {
        const auto p = place_replicas(g, 500, rp, rp);
        std::uint64_t store_sum = 0;
        for (ObjectId obj = 0; obj < 500; ++obj) {
            auto hs = p.holders(obj);
            REQUIRE(hs.size() == rp);
            CHECK(std::adjacent_find(hs.begin(), hs.end()) == hs.end());
            for (NodeId v : hs) CHECK(p.holds(v, obj));
        }
        for (NodeId v = 0; v < 1000; ++v) {
            for (ObjectId obj : p.store(v)) CHECK(std::binary_search(p.holders(obj).begin(), p.holders(obj).end(), v));
            store_sum += p.store(v).size();
        }
        CHECK(store_sum == 500ULL * rp);
        CHECK(p.total_replicas() == 500ULL * rp);
        CHECK(make_rational(store_sum, 1000) == expected_store_size(500, rp, 1000));
    }
}

TEST_CASE("mean store size matches the estimate") {
    const auto g = generate_graph(1000, {2, 8}, 11);
    const auto p2 = place_replicas(g, 500, 2, 3);
    CHECK(make_rational(p2.total_replicas(), 1000) == Rational{1, 1});

    const auto p512 = place_replicas(g, 500, 512, 3);
    CHECK(make_rational(p512.total_replicas(), 1000) == Rational{256, 1});
    // Each node's count is Binomial(500, 0.512): sd ~ 11.2.
    std::size_t near = 0;
    for (NodeId v = 0; v < 1000; ++v) {
        auto size = static_cast<double>(p512.store(v).size());
        near += std::abs(size - 256.0) <= 45.0;
    }
    CHECK(near == 1000);
}

TEST_CASE("full replication puts every object on every node") {
    const auto g = generate_graph(30, {2, 5}, 1);
    const auto p = place_replicas(g, 12, 30, 9);
    for (NodeId v = 0; v < 30; ++v) CHECK(p.store(v).size() == 12);
    CHECK_THROWS_AS(place_replicas(g, 12, 31, 9), ConfigError);
}

TEST_CASE("expected store size is an exact rational") {
    CHECK(expected_store_size(500, 2, 1000) == Rational{1, 1});
    CHECK(expected_store_size(500, 512, 1000) == Rational{256, 1});
    CHECK(expected_store_size(0, 17, 1000) == Rational{0, 1});
    CHECK(expected_store_size(500, 8, 1000) == Rational{4, 1});
    CHECK(expected_store_size(7, 3, 10) == Rational{21, 10});
    CHECK(expected_store_size(7, 3, 10).value() == doctest::Approx(2.1));
}

TEST_CASE("edge list and placement files read back what was written") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = generate_graph(120, {2, 8}, seed);
        const auto p = place_replicas(g, 40, 6, seed);
        std::stringstream graph_text, placement_text;
        write_edge_list(graph_text, g);
        write_placement(placement_text, p);
        CHECK(read_edge_list(graph_text) == g);
        CHECK(read_placement(placement_text, g.node_count()) == p);
    }
    std::stringstream text;
    write_edge_list(text, testing::path_graph(3));
    CHECK(text.str() == "nodes=3\n0 1\n1 2\n");
    std::stringstream ptext;
    write_placement(ptext, ReplicaPlacement::from_holders(4, 2, {{3, 1}, {0, 2}}));
    CHECK(ptext.str() == "0: 1,3\n1: 0,2\n");
}

TEST_CASE("malformed topology files are rejected") {
    std::istringstream no_header("0 1\n");
    CHECK_THROWS_AS(read_edge_list(no_header), ConfigError);
    std::istringstream reversed("nodes=3\n1 0\n");
    CHECK_THROWS_AS(read_edge_list(reversed), ConfigError);
    std::istringstream junk("nodes=3\n0 x\n");
    CHECK_THROWS_AS(read_edge_list(junk), ConfigError);
    std::istringstream uneven("0: 1,2\n1: 3\n");
    CHECK_THROWS_AS(read_placement(uneven, 4), ConfigError);
    std::istringstream repeated("0: 1,1\n");
    CHECK_THROWS_AS(read_placement(repeated, 4), ConfigError);
}
