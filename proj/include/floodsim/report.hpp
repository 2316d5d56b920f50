#ifndef FLOODSIM_REPORT_HPP
#define FLOODSIM_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "floodsim/engine.hpp"
#include "floodsim/metrics.hpp"

namespace floodsim {

inline constexpr std::string_view kSweepCsvHeader =
    "run_id,replication,ttl,queries,success_rate,hits_per_query,hits_per_success,avg_hops,"
    "avg_hops_all_hits,forwarded_per_query";
inline constexpr std::string_view kLocalCsvHeader =
    "run_id,node_id,replication,ttl,queries,success_rate,hits_per_query,hits_per_success,avg_hops,"
    "avg_hops_all_hits,forwarded_per_query";
inline constexpr std::string_view kTraceCsvHeader =
    "query_id,timestamp,origin,object,ttl,success,hits,first_hit_hops,forwarded_packets";

// Shortest decimal that round-trips; locale independent.
std::string format_number(double value);

struct LocalRow {
    std::uint32_t replication = 0;
    std::uint32_t ttl = 0;
    LocalMetricSet local;
};

void write_sweep_csv(std::ostream& out, const SweepTable& table, std::string_view run_id);
// Nodes without queries in a cell keep queries=0 and leave every metric blank.
void write_local_csv(std::ostream& out, std::span<const LocalRow> rows, std::string_view run_id);
void write_trace_csv(std::ostream& out, std::span<const QueryOutcome> outcomes,
                     std::span<const Arrival> arrivals);

/// Reads back a sweep CSV (only the published ratio columns are restored).
SweepTable read_sweep_csv(std::istream& in);

enum class PlotMetric { SuccessRate, HitsPerQuery, AvgHops, ForwardedPerQuery };
inline constexpr PlotMetric kPlotMetrics[] = {PlotMetric::SuccessRate, PlotMetric::HitsPerQuery,
                                              PlotMetric::AvgHops, PlotMetric::ForwardedPerQuery};

std::string plot_file_name(PlotMetric metric);

/// Whitespace-separated table: a '#' header, then one row per TTL
/// (ascending) with one column per replication value (ascending). Missing
/// averages are written as "nan".
void write_plot_data(std::ostream& out, const SweepTable& table, PlotMetric metric);

}  // namespace floodsim

#endif  // FLOODSIM_REPORT_HPP
