#include "floodsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace floodsim {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

MetricSet finish(MetricSet m) {
    m.success_rate = ratio(m.successful_queries, m.total_queries);
    m.hits_per_query = ratio(m.total_hits, m.total_queries);
    m.forwarded_per_query = ratio(m.forwarded_sum, m.total_queries);
    if (m.successful_queries > 0) {
        m.hits_per_success = ratio(m.total_hits, m.successful_queries);
        m.avg_hops = ratio(m.first_hit_hops_sum, m.successful_queries);
        m.avg_hops_all_hits = ratio(m.all_hit_hops_sum, m.total_hits);
    }
    return m;
}

void accumulate(MetricSet& m, const QueryOutcome& q) {
    ++m.total_queries;
    m.forwarded_sum += q.forwarded_packets;
    if (!q.success()) return;
    ++m.successful_queries;
    m.total_hits += q.hits.size();
    m.first_hit_hops_sum += *q.first_hit_hops;
    for (const auto& h : q.hits) m.all_hit_hops_sum += h.hops;
}

}  // namespace

MetricSet aggregate(std::span<const QueryOutcome> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("cannot aggregate an empty outcome list");
    MetricSet m;
    for (const auto& q : outcomes) accumulate(m, q);
    return finish(m);
}

LocalMetricSet aggregate_local(std::span<const QueryOutcome> outcomes, NodeId node) {
    MetricSet m;
    for (const auto& q : outcomes) {
        if (q.origin == node) accumulate(m, q);
    }
    LocalMetricSet local{node, std::nullopt};
    if (m.total_queries > 0) local.metrics = finish(m);
    return local;
}

std::vector<LocalMetricSet> aggregate_local(std::span<const QueryOutcome> outcomes,
                                            std::span<const NodeId> selected_nodes) {
    std::vector<LocalMetricSet> out;
    out.reserve(selected_nodes.size());
    for (NodeId v : selected_nodes) out.push_back(aggregate_local(outcomes, v));
    return out;
}

std::vector<NodeId> default_local_nodes(std::span<const NodeId> generators, std::size_t count) {
    std::vector<NodeId> sorted(generators.begin(), generators.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() > count) sorted.resize(count);
    return sorted;
}

SweepTable::SweepTable(std::vector<SweepRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("sweep table needs at least one cell");
    std::sort(rows_.begin(), rows_.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::pair(a.replication, a.ttl) < std::pair(b.replication, b.ttl);
    });
    for (const auto& r : rows_) {
        replications_.push_back(r.replication);
        ttls_.push_back(r.ttl);
    }
    for (auto* axis : {&replications_, &ttls_}) {
        std::sort(axis->begin(), axis->end());
        axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
    }
    if (rows_.size() != replications_.size() * ttls_.size()) {
        throw std::invalid_argument("sweep table is not rectangular");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i];
        if (r.replication != replications_[i / ttls_.size()] || r.ttl != ttls_[i % ttls_.size()]) {
            throw std::invalid_argument("sweep table is not rectangular");
        }
    }
}

const MetricSet& SweepTable::at(std::uint32_t replication, std::uint32_t ttl) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), std::pair(replication, ttl),
                               [](const SweepRow& r, const std::pair<std::uint32_t, std::uint32_t>& key) {
                                   return std::pair(r.replication, r.ttl) < key;
                               });
    if (it == rows_.end() || it->replication != replication || it->ttl != ttl) {
        throw std::out_of_range("no sweep cell (" + std::to_string(replication) + ", " +
                                std::to_string(ttl) + ")");
    }
    return it->metrics;
}

SweepTable summarize_sweep(const std::map<CellKey, MetricSet>& cells) {
    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (const auto& [key, m] : cells) rows.push_back({key.first, key.second, m});
    return SweepTable(std::move(rows));
}

}  // namespace floodsim
