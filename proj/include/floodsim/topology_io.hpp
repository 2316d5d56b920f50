#ifndef FLOODSIM_TOPOLOGY_IO_HPP
#define FLOODSIM_TOPOLOGY_IO_HPP

#include <cstddef>
#include <iosfwd>

#include "floodsim/topology.hpp"

namespace floodsim {

// Edge-list text: a "nodes=N" header, then one "u v" line per edge with u < v.
void write_edge_list(std::ostream& out, const OverlayGraph& graph);
OverlayGraph read_edge_list(std::istream& in);

// One "object_id: node_id,node_id,..." line per object, objects ascending.
void write_placement(std::ostream& out, const ReplicaPlacement& placement);
// Replication is taken from the holder count of the first line; all lines must agree.
ReplicaPlacement read_placement(std::istream& in, std::size_t node_count);

}  // namespace floodsim

#endif  // FLOODSIM_TOPOLOGY_IO_HPP
