#include "floodsim/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace floodsim {

const char* to_string(Disposition d) {
    switch (d) {
        case Disposition::Duplicate: return "duplicate";
        case Disposition::Hit: return "hit";
        case Disposition::Forward: return "forward";
        case Disposition::Expired: return "expired";
    }
    return "?";
}

bool SeenSet::contains(QueryId id) const {
    if (!first_) return false;
    return *first_ == id || std::binary_search(rest_.begin(), rest_.end(), id);
}

bool SeenSet::insert(QueryId id) {
    if (!first_) {
        first_ = id;
        return true;
    }
    if (*first_ == id) return false;
    auto it = std::lower_bound(rest_.begin(), rest_.end(), id);
    if (it != rest_.end() && *it == id) return false;
    rest_.insert(it, id);
    return true;
}

Origination originate(NodeState& node, ObjectId object_id, std::uint32_t initial_ttl,
                      QueryId query_id, const ProtocolOptions& options) {
    Origination result;
    result.packet = {query_id, node.id(), object_id, initial_ttl};
    node.seen().insert(query_id);
    if (options.origin_local_hit && node.holds(object_id)) {
        result.local_hit = true;
        return result;
    }
    if (initial_ttl == 0) return result;
    QueryPacket copy = result.packet;
    copy.ttl = initial_ttl - 1;
    result.emissions.reserve(node.neighbors().size());
    for (NodeId w : node.neighbors()) result.emissions.push_back({w, copy});
    return result;
}

Disposition receive(NodeState& node, const QueryPacket& packet, NodeId from,
                    std::vector<Emission>& out, const ProtocolOptions& options) {
    if (!node.seen().insert(packet.query_id)) return Disposition::Duplicate;
    if (node.holds(packet.object_id)) return Disposition::Hit;
    if (packet.ttl == 0) return Disposition::Expired;

    QueryPacket copy = packet;
    if (options.fault != Fault::FrozenTtl) copy.ttl = packet.ttl - 1;
    for (NodeId w : node.neighbors()) {
        if (w != from) out.push_back({w, copy});
    }
    return Disposition::Forward;
}

ReceiveAction receive(NodeState& node, const QueryPacket& packet, NodeId from,
                      const ProtocolOptions& options) {
    ReceiveAction action;
    action.disposition = receive(node, packet, from, action.forward_to, options);
    return action;
}

std::uint32_t hop_count(std::uint32_t initial_ttl, std::uint32_t remaining_ttl) {
    if (remaining_ttl > initial_ttl) throw std::invalid_argument("remaining ttl exceeds initial ttl");
    return initial_ttl - remaining_ttl;
}

}  // namespace floodsim
