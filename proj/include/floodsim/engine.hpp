#ifndef FLOODSIM_ENGINE_HPP
#define FLOODSIM_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "floodsim/protocol.hpp"
#include "floodsim/topology.hpp"

namespace floodsim {

struct Hit {
    NodeId node = 0;
    std::uint32_t hops = 0;

    friend bool operator==(const Hit&, const Hit&) = default;
};

struct QueryOutcome {
    QueryId query_id = 0;
    NodeId origin = 0;
    ObjectId object_id = 0;
    std::uint32_t initial_ttl = 0;
    std::vector<Hit> hits;  // one per distinct node, ascending by node
    std::optional<std::uint32_t> first_hit_hops;
    std::uint64_t forwarded_packets = 0;
    std::uint32_t rounds_elapsed = 0;

    bool success() const { return !hits.empty(); }
    std::vector<NodeId> hit_nodes() const;

    friend bool operator==(const QueryOutcome&, const QueryOutcome&) = default;
};

// One delivered copy, recorded when a trace is requested.
struct TraceEvent {
    std::uint32_t round = 0;
    NodeId from = 0;
    NodeId to = 0;
    std::uint32_t ttl = 0;
    Disposition disposition = Disposition::Duplicate;
};

/// Runs flooding queries in synchronous hop rounds. Round 0 is the
/// originator's emission; round k delivers everything sent in round k-1,
/// each receiver handling its arrivals in ascending sender order. Node
/// state is recycled between queries, so one engine serves a whole workload
/// but must not be shared between threads.
class FloodEngine {
public:
    FloodEngine(const OverlayGraph& graph, const ReplicaPlacement& placement,
                ProtocolOptions options = {});

    /// Throws ConfigError for an unknown origin or object.
    QueryOutcome run_query(NodeId origin, ObjectId object_id, std::uint32_t initial_ttl,
                           QueryId query_id, std::vector<TraceEvent>* trace = nullptr);

private:
    NodeState& state(NodeId v);

    const OverlayGraph* graph_;
    const ReplicaPlacement* placement_;
    ProtocolOptions options_;
    std::vector<NodeState> states_;
    std::vector<std::uint64_t> epoch_;
    std::uint64_t current_epoch_ = 0;
};

/// Single query on fresh state.
QueryOutcome run_query(const OverlayGraph& graph, const ReplicaPlacement& placement, NodeId origin,
                       ObjectId object_id, std::uint32_t initial_ttl, QueryId query_id,
                       const ProtocolOptions& options = {});

struct WorkloadSpec {
    std::vector<NodeId> generator_nodes;
    double poisson_rate = 1.0;  // queries per time unit per generator
    std::uint64_t total_queries = 10000;
    std::uint32_t initial_ttl = 8;
};

struct Arrival {
    QueryId query_id = 0;
    double timestamp = 0.0;
    NodeId origin = 0;
    ObjectId object_id = 0;

    friend bool operator==(const Arrival&, const Arrival&) = default;
};

/// Merges one Poisson process per generator and picks each query's target
/// object uniformly. Query ids are 0, 1, 2, ... in arrival order.
std::vector<Arrival> sample_arrivals(std::span<const NodeId> generators, double rate,
                                     std::uint64_t count, std::size_t object_count,
                                     std::uint64_t seed);

struct WorkloadResult {
    std::vector<QueryOutcome> outcomes;  // query_id order
    std::vector<Arrival> arrivals;
};

/// Runs every arrival at `initial_ttl`; queries do not interact.
std::vector<QueryOutcome> run_arrivals(const OverlayGraph& graph, const ReplicaPlacement& placement,
                                       std::span<const Arrival> arrivals, std::uint32_t initial_ttl,
                                       const ProtocolOptions& options = {});

/// Validates the spec against graph and placement, samples the arrival
/// trace from `seed` and runs it.
WorkloadResult run_workload(const OverlayGraph& graph, const ReplicaPlacement& placement,
                            const WorkloadSpec& workload, std::uint64_t seed,
                            const ProtocolOptions& options = {});

}  // namespace floodsim

#endif  // FLOODSIM_ENGINE_HPP
