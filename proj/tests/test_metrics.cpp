#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "floodsim/metrics.hpp"
#include "floodsim/rng.hpp"

using namespace floodsim;

namespace {

QueryOutcome outcome(QueryId id, NodeId origin, std::vector<std::uint32_t> hit_hops,
                     std::uint64_t forwarded) {
    QueryOutcome q;
    q.query_id = id;
    q.origin = origin;
    q.initial_ttl = 8;
    NodeId node = 100;
    for (auto h : hit_hops) q.hits.push_back({node++, h});
    if (!hit_hops.empty()) q.first_hit_hops = *std::min_element(hit_hops.begin(), hit_hops.end());
    q.forwarded_packets = forwarded;
    return q;
}

std::vector<QueryOutcome> random_outcomes(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<QueryOutcome> out;
    for (QueryId id = 0; id < count; ++id) {
        std::vector<std::uint32_t> hops;
        if (rng.below(3) != 0) {
            const auto hits = rng.between(1, 40);
            for (std::uint64_t k = 0; k < hits; ++k) hops.push_back(static_cast<std::uint32_t>(rng.between(1, 8)));
        }
        out.push_back(outcome(id, static_cast<NodeId>(rng.below(10)), hops, rng.below(5000)));
    }
    return out;
}

}  // namespace

TEST_CASE("aggregate: two-query example") {
    const std::vector<QueryOutcome> qs{outcome(0, 1, {3, 5}, 10), outcome(1, 1, {}, 6)};
    const auto m = aggregate(qs);
    CHECK(m.success_rate == 0.5);
    CHECK(m.hits_per_query == 1.0);
    CHECK(m.avg_hops == 3.0);
    CHECK(m.forwarded_per_query == 8.0);
    CHECK(m.hits_per_success == 2.0);
    CHECK(m.avg_hops_all_hits == 4.0);
}

TEST_CASE("aggregate: all failures leave averages absent") {
    const std::vector<QueryOutcome> qs{outcome(0, 1, {}, 4), outcome(1, 2, {}, 0)};
    const auto m = aggregate(qs);
    CHECK(m.success_rate == 0.0);
    CHECK(m.hits_per_query == 0.0);
    CHECK_FALSE(m.avg_hops.has_value());
    CHECK_FALSE(m.hits_per_success.has_value());
    CHECK(m.forwarded_per_query == 2.0);
}

TEST_CASE("aggregate: empty input is an error") {
    CHECK_THROWS_AS(aggregate(std::vector<QueryOutcome>{}), std::invalid_argument);
}

TEST_CASE("aggregate matches an independent single-pass recomputation") {
    const auto qs = random_outcomes(10000, 5);
    // Reference: long double running means, no shared code with aggregate().
    long double n = 0, succ = 0, hits = 0, hops = 0, fwd = 0;
    for (const auto& q : qs) {
        n += 1;
        fwd += static_cast<long double>(q.forwarded_packets);
        if (q.hits.empty()) continue;
        succ += 1;
        hits += static_cast<long double>(q.hits.size());
        std::uint32_t best = 1000;
        for (const auto& h : q.hits) best = std::min(best, h.hops);
        hops += best;
    }
    const auto m = aggregate(qs);
    auto rel = [](double got, long double want) {
        return std::abs(static_cast<long double>(got) - want) / std::max<long double>(1e-300L, std::abs(want));
    };
    CHECK(rel(m.success_rate, succ / n) < 1e-12);
    CHECK(rel(m.hits_per_query, hits / n) < 1e-12);
    CHECK(rel(*m.avg_hops, hops / succ) < 1e-12);
    CHECK(rel(m.forwarded_per_query, fwd / n) < 1e-12);
}

TEST_CASE("aggregate is permutation invariant and hits dominate successes") {
    auto qs = random_outcomes(2000, 9);
    const auto before = aggregate(qs);
    Rng rng(1);
    for (std::size_t i = qs.size(); i > 1; --i) std::swap(qs[i - 1], qs[rng.below(i)]);
    const auto after = aggregate(qs);
    CHECK(after.success_rate == before.success_rate);
    CHECK(after.hits_per_query == before.hits_per_query);
    CHECK(after.avg_hops == before.avg_hops);
    CHECK(after.avg_hops_all_hits == before.avg_hops_all_hits);
    CHECK(after.forwarded_per_query == before.forwarded_per_query);
    CHECK(before.hits_per_query >= before.success_rate);
    CHECK(*before.avg_hops <= 8.0);
}

TEST_CASE("local statistics partition the global totals") {
    const auto qs = random_outcomes(1000, 4);
    std::vector<NodeId> all(10);
    for (NodeId v = 0; v < 10; ++v) all[v] = v;
    const auto locals = aggregate_local(qs, all);
    std::uint64_t total = 0, forwarded = 0;
    for (const auto& l : locals) {
        REQUIRE(l.metrics.has_value());
        total += l.metrics->total_queries;
        forwarded += l.metrics->forwarded_sum;
    }
    const auto global = aggregate(qs);
    CHECK(total == global.total_queries);
    CHECK(forwarded == global.forwarded_sum);
}

TEST_CASE("local statistics for one node use only its queries") {
    std::vector<QueryOutcome> qs;
    for (QueryId id = 0; id < 10; ++id) qs.push_back(outcome(id, id < 3 ? 7 : 2, id == 0 ? std::vector<std::uint32_t>{4} : std::vector<std::uint32_t>{}, id));
    const auto l = aggregate_local(qs, 7);
    REQUIRE(l.metrics.has_value());
    CHECK(l.metrics->total_queries == 3);
    CHECK(l.metrics->success_rate == doctest::Approx(1.0 / 3.0));
    CHECK(l.metrics->forwarded_per_query == 1.0);
    CHECK_FALSE(aggregate_local(qs, 5).metrics.has_value());
}

TEST_CASE("default local selection is the three lowest generators") {
    const std::vector<NodeId> gens{40, 3, 17, 99, 8, 61};
    CHECK(default_local_nodes(gens) == std::vector<NodeId>{3, 8, 17});
    CHECK(default_local_nodes(std::vector<NodeId>{5}).size() == 1);
}

TEST_CASE("sweep table is rectangular and ordered") {
    std::map<CellKey, MetricSet> cells;
    for (std::uint32_t rp : {512u, 2u, 8u, 32u, 128u}) {
        for (std::uint32_t ttl = 8; ttl >= 1; --ttl) {
            MetricSet m;
            m.success_rate = rp / 1000.0 + ttl / 100.0;
            cells[{rp, ttl}] = m;
        }
    }
    const auto table = summarize_sweep(cells);
    CHECK(table.rows().size() == 40);
    CHECK(table.replications() == std::vector<std::uint32_t>{2, 8, 32, 128, 512});
    CHECK(table.ttls().size() == 8);
    CHECK(table.rows().front().replication == 2);
    CHECK(table.rows().front().ttl == 1);
    CHECK(table.at(32, 5).success_rate == doctest::Approx(0.082));
    CHECK_THROWS(table.at(3, 5));

    cells.erase({8, 4});
    CHECK_THROWS_AS(summarize_sweep(cells), std::invalid_argument);
    CHECK_THROWS_AS(summarize_sweep({}), std::invalid_argument);
}
