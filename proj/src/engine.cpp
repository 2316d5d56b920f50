#include "floodsim/engine.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "floodsim/rng.hpp"

namespace floodsim {

namespace {

struct InFlight {
    NodeId from;
    Emission emission;
};

// Copies forwarded by one node within a round: emitted[begin, end).
struct EmissionRun {
    NodeId sender;
    std::size_t begin;
    std::size_t end;
};

}  // namespace

std::vector<NodeId> QueryOutcome::hit_nodes() const {
    std::vector<NodeId> nodes;
    nodes.reserve(hits.size());
    for (const auto& h : hits) nodes.push_back(h.node);
    return nodes;
}

FloodEngine::FloodEngine(const OverlayGraph& graph, const ReplicaPlacement& placement,
                         ProtocolOptions options)
    : graph_(&graph),
      placement_(&placement),
      options_(options),
      states_(graph.node_count()),
      epoch_(graph.node_count(), 0) {
    if (placement.node_count() != graph.node_count()) {
        throw ConfigError("placement covers " + std::to_string(placement.node_count()) +
                          " nodes but the overlay has " + std::to_string(graph.node_count()));
    }
}

NodeState& FloodEngine::state(NodeId v) {
    if (epoch_[v] != current_epoch_) {
        states_[v] = NodeState(v, *graph_, *placement_);
        epoch_[v] = current_epoch_;
    }
    return states_[v];
}

QueryOutcome FloodEngine::run_query(NodeId origin, ObjectId object_id, std::uint32_t initial_ttl,
                                    QueryId query_id, std::vector<TraceEvent>* trace) {
    if (origin >= graph_->node_count()) throw ConfigError("origin " + std::to_string(origin) + " out of range");
    if (object_id >= placement_->object_count()) {
        throw ConfigError("object " + std::to_string(object_id) + " out of range");
    }
    ++current_epoch_;

    QueryOutcome outcome;
    outcome.query_id = query_id;
    outcome.origin = origin;
    outcome.object_id = object_id;
    outcome.initial_ttl = initial_ttl;

    Origination start = originate(state(origin), object_id, initial_ttl, query_id, options_);
    if (start.local_hit) {
        outcome.hits.push_back({origin, 0});
        outcome.first_hit_hops = 0;
        return outcome;
    }

    std::vector<InFlight> in_flight;
    in_flight.reserve(start.emissions.size());
    for (const auto& e : start.emissions) in_flight.push_back({origin, e});
    outcome.forwarded_packets = in_flight.size();

    // in_flight is kept in ascending sender order, so walking it in sequence
    // hands every receiver its arrivals in ascending sender order.
    std::vector<InFlight> next;
    std::vector<Emission> emitted;
    std::vector<EmissionRun> runs;
    std::uint32_t round = 0;
    while (!in_flight.empty()) {
        ++round;
        emitted.clear();
        runs.clear();
        for (const auto& [from, emission] : in_flight) {
            const std::size_t begin = emitted.size();
            const Disposition d = receive(state(emission.to), emission.packet, from, emitted, options_);
            if (trace) trace->push_back({round, from, emission.to, emission.packet.ttl, d});
            if (d == Disposition::Hit) {
                const std::uint32_t hops = hop_count(initial_ttl, emission.packet.ttl);
                outcome.hits.push_back({emission.to, hops});
                if (!outcome.first_hit_hops || hops < *outcome.first_hit_hops) outcome.first_hit_hops = hops;
            }
            if (emitted.size() > begin) runs.push_back({emission.to, begin, emitted.size()});
        }
        std::sort(runs.begin(), runs.end(),
                  [](const EmissionRun& a, const EmissionRun& b) { return a.sender < b.sender; });
        next.clear();
        for (const auto& run : runs) {
            for (std::size_t i = run.begin; i < run.end; ++i) next.push_back({run.sender, emitted[i]});
        }
        outcome.forwarded_packets += next.size();
        std::swap(in_flight, next);
    }
    outcome.rounds_elapsed = round;
    std::sort(outcome.hits.begin(), outcome.hits.end(),
              [](const Hit& a, const Hit& b) { return a.node < b.node; });
    return outcome;
}

QueryOutcome run_query(const OverlayGraph& graph, const ReplicaPlacement& placement, NodeId origin,
                       ObjectId object_id, std::uint32_t initial_ttl, QueryId query_id,
                       const ProtocolOptions& options) {
    FloodEngine engine(graph, placement, options);
    return engine.run_query(origin, object_id, initial_ttl, query_id);
}

std::vector<Arrival> sample_arrivals(std::span<const NodeId> generators, double rate,
                                     std::uint64_t count, std::size_t object_count,
                                     std::uint64_t seed) {
    if (generators.empty()) throw ConfigError("workload needs at least one generator node");
    if (!(rate > 0.0)) throw ConfigError("poisson rate must be positive");
    if (object_count == 0) throw ConfigError("workload needs at least one object");

    Rng timing(derive_seed(seed, 0));
    Rng targets(derive_seed(seed, 1));
    std::vector<double> next_time(generators.size());
    for (auto& t : next_time) t = timing.exponential(rate);

    std::vector<Arrival> arrivals;
    arrivals.reserve(count);
    for (QueryId id = 0; id < count; ++id) {
        auto g = static_cast<std::size_t>(std::min_element(next_time.begin(), next_time.end()) -
                                          next_time.begin());
        arrivals.push_back({id, next_time[g], generators[g],
                            static_cast<ObjectId>(targets.below(object_count))});
        next_time[g] += timing.exponential(rate);
    }
    return arrivals;
}

std::vector<QueryOutcome> run_arrivals(const OverlayGraph& graph, const ReplicaPlacement& placement,
                                       std::span<const Arrival> arrivals, std::uint32_t initial_ttl,
                                       const ProtocolOptions& options) {
    FloodEngine engine(graph, placement, options);
    std::vector<QueryOutcome> outcomes;
    outcomes.reserve(arrivals.size());
    for (const auto& a : arrivals) {
        outcomes.push_back(engine.run_query(a.origin, a.object_id, initial_ttl, a.query_id));
    }
    return outcomes;
}

WorkloadResult run_workload(const OverlayGraph& graph, const ReplicaPlacement& placement,
                            const WorkloadSpec& workload, std::uint64_t seed,
                            const ProtocolOptions& options) {
    if (workload.total_queries < 1) throw ConfigError("total queries must be at least 1");
    std::vector<NodeId> sorted(workload.generator_nodes);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("generator nodes must be distinct");
    }
    if (!sorted.empty() && sorted.back() >= graph.node_count()) {
        throw ConfigError("generator node " + std::to_string(sorted.back()) + " out of range");
    }
    WorkloadResult result;
    result.arrivals = sample_arrivals(workload.generator_nodes, workload.poisson_rate,
                                      workload.total_queries, placement.object_count(), seed);
    result.outcomes = run_arrivals(graph, placement, result.arrivals, workload.initial_ttl, options);
    return result;
}

}  // namespace floodsim
