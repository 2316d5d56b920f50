#include "floodsim/oracle.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace floodsim {

namespace {

constexpr std::uint32_t kUnreached = static_cast<std::uint32_t>(-1);

void check_inputs(const OverlayGraph& graph, const ReplicaPlacement& placement, NodeId origin,
                  ObjectId object_id) {
    if (origin >= graph.node_count()) throw ConfigError("origin " + std::to_string(origin) + " out of range");
    if (object_id >= placement.object_count()) {
        throw ConfigError("object " + std::to_string(object_id) + " out of range");
    }
}

// Distance of every node reached by the absorbing BFS, kUnreached elsewhere.
std::vector<std::uint32_t> absorbing_distances(const OverlayGraph& graph,
                                               const ReplicaPlacement& placement, NodeId origin,
                                               ObjectId object_id, std::uint32_t limit,
                                               bool origin_absorbs) {
    std::vector<std::uint32_t> dist(graph.node_count(), kUnreached);
    dist[origin] = 0;
    if (origin_absorbs) return dist;
    std::deque<NodeId> queue{origin};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        const bool absorbing = v != origin && placement.holds(v, object_id);
        if (absorbing || dist[v] >= limit) continue;
        for (NodeId w : graph.neighbors(v)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

OracleResult oracle_query(const OverlayGraph& graph, const ReplicaPlacement& placement,
                          NodeId origin, ObjectId object_id, std::uint32_t initial_ttl,
                          OracleOptions options) {
    check_inputs(graph, placement, origin, object_id);
    const bool origin_absorbs = options.origin_local_hit && placement.holds(origin, object_id);
    auto dist = absorbing_distances(graph, placement, origin, object_id, initial_ttl, origin_absorbs);

    OracleResult r;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (dist[v] == kUnreached) continue;
        r.processed_nodes.push_back(v);
        const bool counts = v != origin || origin_absorbs;
        if (counts && placement.holds(v, object_id)) {
            r.hit_nodes.push_back(v);
            if (!r.min_hit_distance || dist[v] < *r.min_hit_distance) r.min_hit_distance = dist[v];
        }
    }
    r.success = !r.hit_nodes.empty();
    return r;
}

std::uint64_t oracle_forwarded_count(const OverlayGraph& graph, const ReplicaPlacement& placement,
                                     NodeId origin, ObjectId object_id, std::uint32_t initial_ttl,
                                     OracleOptions options) {
    check_inputs(graph, placement, origin, object_id);
    if (options.origin_local_hit && placement.holds(origin, object_id)) return 0;
    if (initial_ttl == 0) return 0;
    auto dist = absorbing_distances(graph, placement, origin, object_id, initial_ttl, false);

    // The origin sends to every neighbor; any other reached node that neither
    // holds the object nor arrived with ttl 0 sends to all but one neighbor.
    std::uint64_t total = graph.degree(origin);
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (v == origin || dist[v] == kUnreached) continue;
        if (placement.holds(v, object_id) || dist[v] >= initial_ttl) continue;
        total += graph.degree(v) - 1;
    }
    return total;
}

std::vector<NodeId> bfs_ball(const OverlayGraph& graph, NodeId origin, std::uint32_t radius) {
    std::vector<std::uint32_t> dist(graph.node_count(), kUnreached);
    std::vector<NodeId> ball{origin};
    dist[origin] = 0;
    for (std::size_t head = 0; head < ball.size(); ++head) {
        NodeId v = ball[head];
        if (dist[v] == radius) continue;
        for (NodeId w : graph.neighbors(v)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                ball.push_back(w);
            }
        }
    }
    std::sort(ball.begin(), ball.end());
    return ball;
}

}  // namespace floodsim
