#ifndef FLOODSIM_ORACLE_HPP
#define FLOODSIM_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "floodsim/topology.hpp"

namespace floodsim {

// Reference answers computed by depth-limited breadth-first search in which
// holder nodes absorb the query (counted, never expanded). Shares no
// traversal code with FloodEngine.

struct OracleResult {
    bool success = false;
    std::vector<NodeId> hit_nodes;        // ascending
    std::optional<std::uint32_t> min_hit_distance;
    std::vector<NodeId> processed_nodes;  // ascending, includes the origin
};

struct OracleOptions {
    bool origin_local_hit = false;
};

OracleResult oracle_query(const OverlayGraph& graph, const ReplicaPlacement& placement,
                          NodeId origin, ObjectId object_id, std::uint32_t initial_ttl,
                          OracleOptions options = {});

// Link transmissions of the same query under hop-synchronous delivery.
std::uint64_t oracle_forwarded_count(const OverlayGraph& graph, const ReplicaPlacement& placement,
                                     NodeId origin, ObjectId object_id, std::uint32_t initial_ttl,
                                     OracleOptions options = {});

// Plain depth-limited BFS ball without absorption.
std::vector<NodeId> bfs_ball(const OverlayGraph& graph, NodeId origin, std::uint32_t radius);

}  // namespace floodsim

#endif  // FLOODSIM_ORACLE_HPP
