#ifndef FLOODSIM_TOPOLOGY_HPP
#define FLOODSIM_TOPOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "floodsim/types.hpp"

namespace floodsim {

struct DegreeSpec {
    std::uint32_t min_degree = 2;
    std::uint32_t max_degree = 8;
};

using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected overlay. Adjacency is stored in CSR form with every
/// neighbor list sorted ascending; no self-loops, no parallel edges.
class OverlayGraph {
public:
    OverlayGraph() = default;

    /// Builds a graph from an edge list. Throws ConfigError on self-loops,
    /// duplicate edges or out-of-range endpoints. Connectivity is not required
    /// here; see is_connected().
    static OverlayGraph from_edges(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(NodeId u, NodeId v) const;

    /// Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    /// Number of component-joining edges added by generate_graph (0 otherwise).
    std::size_t repair_edges() const { return repair_edges_; }

    friend bool operator==(const OverlayGraph& a, const OverlayGraph& b) {
        return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

private:
    friend OverlayGraph generate_graph(std::size_t, DegreeSpec, std::uint64_t);

    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::size_t repair_edges_ = 0;
};

/// Random overlay with per-node target degrees drawn uniformly from
/// [min_degree, max_degree], paired configuration-model style. Self-loops and
/// parallel edges are re-paired (bounded retries, then the stub pair is
/// dropped) and disconnected components are joined by random edges until the
/// graph is connected. Deterministic in (node_count, degrees, seed).
OverlayGraph generate_graph(std::size_t node_count, DegreeSpec degrees, std::uint64_t seed);

// Component label per node, labels numbered by smallest member.
std::vector<std::uint32_t> component_labels(const OverlayGraph& graph);
bool is_connected(const OverlayGraph& graph);

/// Exact non-negative rational, always stored in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

/// Mean number of objects per node: object_count * replication / node_count.
Rational expected_store_size(std::uint64_t object_count, std::uint64_t replication,
                             std::uint64_t node_count);

/// Replica assignment: each object is held by exactly `replication` distinct
/// nodes. holders() and store() are exact inverses, both sorted ascending.
class ReplicaPlacement {
public:
    ReplicaPlacement() = default;

    /// Throws ConfigError if a holder set has the wrong size, repeats a node or
    /// names a node outside [0, node_count).
    static ReplicaPlacement from_holders(std::size_t node_count, std::uint32_t replication,
                                         std::vector<std::vector<NodeId>> holders);

    std::size_t node_count() const { return stores_.size(); }
    std::size_t object_count() const { return holders_.size(); }
    std::uint32_t replication() const { return replication_; }

    std::span<const NodeId> holders(ObjectId object) const { return holders_[object]; }
    std::span<const ObjectId> store(NodeId node) const { return stores_[node]; }

    bool holds(NodeId node, ObjectId object) const {
        return bitmap_[static_cast<std::size_t>(node) * holders_.size() + object] != 0;
    }

    std::uint64_t total_replicas() const;

    friend bool operator==(const ReplicaPlacement& a, const ReplicaPlacement& b) {
        return a.replication_ == b.replication_ && a.holders_ == b.holders_;
    }

private:
    std::uint32_t replication_ = 0;
    std::vector<std::vector<NodeId>> holders_;
    std::vector<std::vector<ObjectId>> stores_;
    std::vector<std::uint8_t> bitmap_;  // node-major membership
};

/// Uniform placement: for each object independently, `replication` holders
/// are drawn uniformly without replacement. Deterministic in the inputs.
ReplicaPlacement place_replicas(const OverlayGraph& graph, std::size_t object_count,
                                std::uint32_t replication, std::uint64_t seed);

}  // namespace floodsim

#endif  // FLOODSIM_TOPOLOGY_HPP
