#include "floodsim/topology_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace floodsim {

namespace {

std::uint64_t parse_id(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != token.size() || token.front() == '-') {
        throw ConfigError("line " + std::to_string(line_no) + ": bad id '" + token + "'");
    }
    return value;
}

}  // namespace

void write_edge_list(std::ostream& out, const OverlayGraph& graph) {
    out << "nodes=" << graph.node_count() << '\n';
    for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

OverlayGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t node_count = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line.rfind("nodes=", 0) != 0) throw ConfigError("edge list must start with nodes=N");
            node_count = parse_id(line.substr(6), line_no);
            have_header = true;
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'u v'");
        }
        auto u = parse_id(a, line_no);
        auto v = parse_id(b, line_no);
        if (u >= v) throw ConfigError("line " + std::to_string(line_no) + ": edges must have u < v");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    if (!have_header) throw ConfigError("empty edge list");
    return OverlayGraph::from_edges(node_count, edges);
}

void write_placement(std::ostream& out, const ReplicaPlacement& placement) {
    for (ObjectId obj = 0; obj < placement.object_count(); ++obj) {
        out << obj << ':';
        char sep = ' ';
        for (NodeId v : placement.holders(obj)) {
            out << sep << v;
            sep = ',';
        }
        out << '\n';
    }
}

ReplicaPlacement read_placement(std::istream& in, std::size_t node_count) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<NodeId>> holders;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": missing ':'");
        auto obj = parse_id(line.substr(0, colon), line_no);
        if (obj != holders.size()) {
            throw ConfigError("line " + std::to_string(line_no) + ": objects must be listed in order");
        }
        auto& hs = holders.emplace_back();
        std::istringstream list(line.substr(colon + 1));
        std::string token;
        while (std::getline(list, token, ',')) {
            auto first = token.find_first_not_of(' ');
            auto last = token.find_last_not_of(' ');
            if (first == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": empty holder");
            hs.push_back(static_cast<NodeId>(parse_id(token.substr(first, last - first + 1), line_no)));
        }
    }
    if (holders.empty()) throw ConfigError("empty placement");
    auto replication = static_cast<std::uint32_t>(holders.front().size());
    return ReplicaPlacement::from_holders(node_count, replication, std::move(holders));
}

}  // namespace floodsim
