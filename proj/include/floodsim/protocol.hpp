#ifndef FLOODSIM_PROTOCOL_HPP
#define FLOODSIM_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "floodsim/topology.hpp"
#include "floodsim/types.hpp"

namespace floodsim {

/// The search query as it travels the overlay.
struct QueryPacket {
    QueryId query_id = 0;
    NodeId source = 0;  // originator
    ObjectId object_id = 0;
    std::uint32_t ttl = 0;

    friend bool operator==(const QueryPacket&, const QueryPacket&) = default;
};

struct Emission {
    NodeId to = 0;
    QueryPacket packet;

    friend bool operator==(const Emission&, const Emission&) = default;
};

enum class Disposition { Duplicate, Hit, Forward, Expired };

const char* to_string(Disposition d);

struct ReceiveAction {
    Disposition disposition = Disposition::Duplicate;
    std::vector<Emission> forward_to;  // only for Forward, ascending by neighbor
};

/// Set of processed query ids. The common case of a node seeing one query is
/// held inline without allocating.
class SeenSet {
public:
    bool contains(QueryId id) const;
    // Returns false if id was already present.
    bool insert(QueryId id);
    std::size_t size() const { return first_ ? 1 + rest_.size() : 0; }

private:
    std::optional<QueryId> first_;
    std::vector<QueryId> rest_;  // sorted
};

// Fault modes for negative-control fixtures. Real runs use None.
enum class Fault { None, FrozenTtl };

struct ProtocolOptions {
    // Let the originator answer its own query from its local store.
    bool origin_local_hit = false;
    Fault fault = Fault::None;
};

/// Per-node automaton state. Store and neighbors are views into the
/// run's immutable placement and overlay.
class NodeState {
public:
    NodeState() = default;
    NodeState(NodeId id, const OverlayGraph& graph, const ReplicaPlacement& placement)
        : id_(id), neighbors_(graph.neighbors(id)), placement_(&placement) {}

    NodeId id() const { return id_; }
    std::span<const NodeId> neighbors() const { return neighbors_; }
    bool holds(ObjectId object) const { return placement_->holds(id_, object); }
    SeenSet& seen() { return seen_; }
    const SeenSet& seen() const { return seen_; }

private:
    NodeId id_ = 0;
    std::span<const NodeId> neighbors_;
    const ReplicaPlacement* placement_ = nullptr;
    SeenSet seen_;
};

struct Origination {
    QueryPacket packet;
    // Set only when origin_local_hit is on and the originator holds the object.
    bool local_hit = false;
    std::vector<Emission> emissions;
};

/// Starts a query at `node`. The id is marked seen; with initial_ttl >= 1 a
/// copy carrying initial_ttl - 1 goes to every neighbor in ascending order.
Origination originate(NodeState& node, ObjectId object_id, std::uint32_t initial_ttl,
                      QueryId query_id, const ProtocolOptions& options = {});

/// Handles one arriving copy: duplicate check, then store check, then TTL
/// expiry, otherwise forward to every neighbor except `from`. Forwarded copies
/// are appended to `out`.
Disposition receive(NodeState& node, const QueryPacket& packet, NodeId from,
                    std::vector<Emission>& out, const ProtocolOptions& options = {});

ReceiveAction receive(NodeState& node, const QueryPacket& packet, NodeId from,
                      const ProtocolOptions& options = {});

/// Hops travelled by a copy that still carries remaining_ttl.
std::uint32_t hop_count(std::uint32_t initial_ttl, std::uint32_t remaining_ttl);

}  // namespace floodsim

#endif  // FLOODSIM_PROTOCOL_HPP
