#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "floodsim/oracle.hpp"
#include "floodsim/rng.hpp"

using namespace floodsim;
using namespace floodsim::testing;

TEST_CASE("star: both holding leaves are hits at distance one") {
    const auto g = star_graph(5);
    const auto p = single_object(6, {2, 4});
    const auto r = oracle_query(g, p, 0, 0, 1);
    CHECK(r.success);
    CHECK(r.hit_nodes == std::vector<NodeId>{2, 4});
    CHECK(r.min_hit_distance == 1u);
    CHECK(oracle_forwarded_count(g, p, 0, 0, 1) == 5);
}

TEST_CASE("no holder within reach means failure") {
    const auto g = path_graph(6);
    const auto p = single_object(6, {5});
    const auto r = oracle_query(g, p, 0, 0, 4);
    CHECK_FALSE(r.success);
    CHECK(r.hit_nodes.empty());
    CHECK_FALSE(r.min_hit_distance.has_value());
    CHECK(r.processed_nodes == std::vector<NodeId>{0, 1, 2, 3, 4});
}

TEST_CASE("a holder absorbs the flood on a path") {
    const auto g = path_graph(4);
    const auto p = single_object(4, {1, 3});
    const auto r = oracle_query(g, p, 0, 0, 3);
    CHECK(r.hit_nodes == std::vector<NodeId>{1});
    CHECK(r.processed_nodes == std::vector<NodeId>{0, 1});
    CHECK(r.min_hit_distance == 1u);
    // Plain BFS would have reached node 3.
    CHECK(bfs_ball(g, 0, 3) == std::vector<NodeId>{0, 1, 2, 3});
    CHECK(oracle_forwarded_count(g, p, 0, 0, 3) == 1);
}

TEST_CASE("hand-traced forwarded counts") {
    SUBCASE("cycle of four") {
        const auto g = cycle_graph(4);
        const auto p = single_object(4, {2});
        CHECK(oracle_forwarded_count(g, p, 0, 0, 2) == 4);
        CHECK(oracle_query(g, p, 0, 0, 2).hit_nodes == std::vector<NodeId>{2});
    }
    SUBCASE("path of five") {
        const auto g = path_graph(5);
        const auto p = single_object(5, {3});
        CHECK(oracle_forwarded_count(g, p, 0, 0, 3) == 3);
        CHECK(oracle_query(g, p, 0, 0, 3).min_hit_distance == 3u);
    }
    SUBCASE("ttl zero") {
        const auto g = cycle_graph(4);
        const auto p = single_object(4, {1});
        CHECK(oracle_forwarded_count(g, p, 0, 0, 0) == 0);
        CHECK_FALSE(oracle_query(g, p, 0, 0, 0).success);
    }
}

TEST_CASE("origin is never a hit unless local hits are enabled") {
    const auto g = path_graph(3);
    const auto p = single_object(3, {0});
    CHECK_FALSE(oracle_query(g, p, 0, 0, 2).success);
    CHECK(oracle_forwarded_count(g, p, 0, 0, 2) == 2);
    const auto local = oracle_query(g, p, 0, 0, 2, {.origin_local_hit = true});
    CHECK(local.hit_nodes == std::vector<NodeId>{0});
    CHECK(local.min_hit_distance == 0u);
    CHECK(oracle_forwarded_count(g, p, 0, 0, 2, {.origin_local_hit = true}) == 0);
}

TEST_CASE("plain BFS ball contains the absorbing reach set") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const std::size_t n = rng.between(20, 120);
        const auto g = generate_graph(n, {2, 8}, rng.next());
        const auto rp = static_cast<std::uint32_t>(rng.between(1, n / 5));
        const auto p = place_replicas(g, 5, rp, rng.next());
        const auto origin = static_cast<NodeId>(rng.below(n));
        const auto ttl = static_cast<std::uint32_t>(rng.between(0, 6));
        const auto r = oracle_query(g, p, origin, 0, ttl);
        const auto ball = bfs_ball(g, origin, ttl);
        CHECK(std::includes(ball.begin(), ball.end(), r.processed_nodes.begin(), r.processed_nodes.end()));
        // Equality exactly when no holder sits strictly inside the ball.
        bool interior_holder = false;
        const auto inner = ttl == 0 ? std::vector<NodeId>{} : bfs_ball(g, origin, ttl - 1);
        for (NodeId v : inner) interior_holder |= (v != origin && p.holds(v, 0));
        if (!interior_holder) CHECK(ball == r.processed_nodes);
    }
}
