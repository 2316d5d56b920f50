#ifndef FLOODSIM_TESTS_FIXTURES_HPP
#define FLOODSIM_TESTS_FIXTURES_HPP

#include <vector>

#include "floodsim/topology.hpp"

namespace floodsim::testing {

inline OverlayGraph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return OverlayGraph::from_edges(n, edges);
}

inline OverlayGraph cycle_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    edges.emplace_back(0, static_cast<NodeId>(n - 1));
    return OverlayGraph::from_edges(n, edges);
}

// Center 0, leaves 1..leaves.
inline OverlayGraph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return OverlayGraph::from_edges(leaves + 1, edges);
}

// Single object 0 held at `holders`.
inline ReplicaPlacement single_object(std::size_t node_count, std::vector<NodeId> holders) {
    const auto rp = static_cast<std::uint32_t>(holders.size());
    return ReplicaPlacement::from_holders(node_count, rp, {std::move(holders)});
}

}  // namespace floodsim::testing

#endif  // FLOODSIM_TESTS_FIXTURES_HPP
