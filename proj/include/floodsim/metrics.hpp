#ifndef FLOODSIM_METRICS_HPP
#define FLOODSIM_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "floodsim/engine.hpp"

namespace floodsim {

// Aggregate search statistics over a set of queries. Every ratio is taken
// over integer totals accumulated in query order, so values are exact up to
// the final division.
struct MetricSet {
    std::uint64_t total_queries = 0;
    std::uint64_t successful_queries = 0;
    std::uint64_t total_hits = 0;
    std::uint64_t first_hit_hops_sum = 0;
    std::uint64_t all_hit_hops_sum = 0;
    std::uint64_t forwarded_sum = 0;

    double success_rate = 0.0;
    double hits_per_query = 0.0;
    std::optional<double> hits_per_success;
    std::optional<double> avg_hops;           // first hit, successful queries only
    std::optional<double> avg_hops_all_hits;  // every hit
    double forwarded_per_query = 0.0;
};

/// Throws std::invalid_argument on an empty outcome list.
MetricSet aggregate(std::span<const QueryOutcome> outcomes);

struct LocalMetricSet {
    NodeId node_id = 0;
    std::optional<MetricSet> metrics;  // empty when the node originated no queries
};

LocalMetricSet aggregate_local(std::span<const QueryOutcome> outcomes, NodeId node);
std::vector<LocalMetricSet> aggregate_local(std::span<const QueryOutcome> outcomes,
                                            std::span<const NodeId> selected_nodes);

// The selection used when none is given: the `count` lowest-id generators.
std::vector<NodeId> default_local_nodes(std::span<const NodeId> generators, std::size_t count = 3);

using CellKey = std::pair<std::uint32_t, std::uint32_t>;  // (replication, ttl)

struct SweepRow {
    std::uint32_t replication = 0;
    std::uint32_t ttl = 0;
    MetricSet metrics;
};

/// Rectangular table ordered by (replication, ttl). Throws if the grid has
/// holes or no cells.
class SweepTable {
public:
    SweepTable() = default;
    explicit SweepTable(std::vector<SweepRow> rows);

    const std::vector<SweepRow>& rows() const { return rows_; }
    const std::vector<std::uint32_t>& replications() const { return replications_; }
    const std::vector<std::uint32_t>& ttls() const { return ttls_; }
    const MetricSet& at(std::uint32_t replication, std::uint32_t ttl) const;

private:
    std::vector<SweepRow> rows_;
    std::vector<std::uint32_t> replications_;
    std::vector<std::uint32_t> ttls_;
};

SweepTable summarize_sweep(const std::map<CellKey, MetricSet>& cells);

}  // namespace floodsim

#endif  // FLOODSIM_METRICS_HPP
