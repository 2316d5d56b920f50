#include "floodsim/topology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_set>

#include "floodsim/rng.hpp"

namespace floodsim {

namespace {

constexpr int kRepairRetries = 64;

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }

    std::vector<std::size_t> parent;
};

}  // namespace

OverlayGraph OverlayGraph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    if (node_count > std::size_t{1} << 31) throw ConfigError("node count too large");
    std::vector<std::size_t> degree(node_count, 0);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= node_count || v >= node_count) {
            throw ConfigError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") references a node outside [0, " + std::to_string(node_count) + ")");
        }
        if (u == v) throw ConfigError("self-loop at node " + std::to_string(u));
        if (!seen.insert(edge_key(u, v)).second) {
            throw ConfigError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        ++degree[u];
        ++degree[v];
    }

    OverlayGraph g;
    g.offsets_.assign(node_count + 1, 0);
    for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.targets_.resize(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.targets_[cursor[u]++] = v;
        g.targets_[cursor[v]++] = u;
    }
    for (std::size_t i = 0; i < node_count; ++i) {
        std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                  g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    }
    return g;
}

bool OverlayGraph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> OverlayGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

OverlayGraph generate_graph(std::size_t node_count, DegreeSpec degrees, std::uint64_t seed) {
    if (node_count < 2) throw ConfigError("overlay needs at least 2 nodes");
    if (degrees.min_degree < 1) throw ConfigError("min degree must be at least 1");
    if (degrees.max_degree < degrees.min_degree) throw ConfigError("max degree below min degree");
    if (degrees.max_degree >= node_count) {
        throw ConfigError("max degree " + std::to_string(degrees.max_degree) +
                          " infeasible for " + std::to_string(node_count) + " nodes");
    }

    Rng rng(seed);
    std::vector<std::uint32_t> target(node_count);
    std::uint64_t stub_total = 0;
    for (auto& t : target) {
        t = static_cast<std::uint32_t>(rng.between(degrees.min_degree, degrees.max_degree));
        stub_total += t;
    }
    if (stub_total % 2 != 0) {
        auto& t = target[rng.below(node_count)];
        if (t < degrees.max_degree) {
            ++t;
        } else {
            --t;
        }
    }

    std::vector<NodeId> stubs;
    for (NodeId v = 0; v < node_count; ++v) stubs.insert(stubs.end(), target[v], v);
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);

    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> present;
    edges.reserve(stubs.size() / 2);
    present.reserve(stubs.size());
    auto acceptable = [&](NodeId u, NodeId v) { return u != v && !present.contains(edge_key(u, v)); };

    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        bool paired = acceptable(stubs[i], stubs[i + 1]);
        // Re-pair by swapping the partner stub with a random unpaired stub.
        for (int attempt = 0; !paired && attempt < kRepairRetries && i + 2 < stubs.size(); ++attempt) {
            std::size_t j = i + 2 + rng.below(stubs.size() - i - 2);
            std::swap(stubs[i + 1], stubs[j]);
            paired = acceptable(stubs[i], stubs[i + 1]);
        }
        if (!paired) continue;
        present.insert(edge_key(stubs[i], stubs[i + 1]));
        edges.emplace_back(std::min(stubs[i], stubs[i + 1]), std::max(stubs[i], stubs[i + 1]));
    }

    DisjointSets sets(node_count);
    std::size_t components = node_count;
    for (auto [u, v] : edges) components -= sets.unite(u, v) ? 1 : 0;

    std::size_t repairs = 0;
    while (components > 1) {
        auto u = static_cast<NodeId>(rng.below(node_count));
        NodeId v;
        do {
            v = static_cast<NodeId>(rng.below(node_count));
        } while (sets.find(u) == sets.find(v));
        sets.unite(u, v);
        --components;
        ++repairs;
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }

    OverlayGraph g = OverlayGraph::from_edges(node_count, edges);
    g.repair_edges_ = repairs;
    return g;
}

std::vector<std::uint32_t> component_labels(const OverlayGraph& graph) {
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> label(graph.node_count(), kUnset);
    std::queue<NodeId> frontier;
    for (NodeId start = 0; start < graph.node_count(); ++start) {
        if (label[start] != kUnset) continue;
        label[start] = start;
        frontier.push(start);
        while (!frontier.empty()) {
            NodeId v = frontier.front();
            frontier.pop();
            for (NodeId w : graph.neighbors(v)) {
                if (label[w] == kUnset) {
                    label[w] = start;
                    frontier.push(w);
                }
            }
        }
    }
    return label;
}

bool is_connected(const OverlayGraph& graph) {
    auto labels = component_labels(graph);
    return std::all_of(labels.begin(), labels.end(), [](std::uint32_t l) { return l == 0; });
}

Rational make_rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw ConfigError("zero denominator");
    std::uint64_t g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

Rational expected_store_size(std::uint64_t object_count, std::uint64_t replication,
                             std::uint64_t node_count) {
    return make_rational(object_count * replication, node_count);
}

ReplicaPlacement ReplicaPlacement::from_holders(std::size_t node_count, std::uint32_t replication,
                                                std::vector<std::vector<NodeId>> holders) {
    if (replication < 1) throw ConfigError("replication must be at least 1");
    if (replication > node_count) {
        throw ConfigError("replication " + std::to_string(replication) + " exceeds node count " +
                          std::to_string(node_count));
    }
    ReplicaPlacement p;
    p.replication_ = replication;
    p.stores_.resize(node_count);
    p.bitmap_.assign(node_count * holders.size(), 0);
    for (ObjectId obj = 0; obj < holders.size(); ++obj) {
        auto& hs = holders[obj];
        std::sort(hs.begin(), hs.end());
        if (hs.size() != replication) {
            throw ConfigError("object " + std::to_string(obj) + " has " + std::to_string(hs.size()) +
                              " holders, expected " + std::to_string(replication));
        }
        if (std::adjacent_find(hs.begin(), hs.end()) != hs.end()) {
            throw ConfigError("object " + std::to_string(obj) + " held twice by one node");
        }
        for (NodeId v : hs) {
            if (v >= node_count) throw ConfigError("holder " + std::to_string(v) + " out of range");
            p.stores_[v].push_back(obj);
            p.bitmap_[static_cast<std::size_t>(v) * holders.size() + obj] = 1;
        }
    }
    p.holders_ = std::move(holders);
    return p;
}

std::uint64_t ReplicaPlacement::total_replicas() const {
    std::uint64_t total = 0;
    for (const auto& s : stores_) total += s.size();
    return total;
}

ReplicaPlacement place_replicas(const OverlayGraph& graph, std::size_t object_count,
                                std::uint32_t replication, std::uint64_t seed) {
    const std::size_t n = graph.node_count();
    if (replication < 1) throw ConfigError("replication must be at least 1");
    if (replication > n) {
        throw ConfigError("replication " + std::to_string(replication) + " exceeds node count " +
                          std::to_string(n));
    }
    Rng rng(seed);
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::vector<NodeId>> holders(object_count);
    for (auto& hs : holders) {
        // Partial Fisher-Yates: the first `replication` slots become the sample.
        for (std::size_t i = 0; i < replication; ++i) {
            std::swap(pool[i], pool[i + rng.below(n - i)]);
        }
        hs.assign(pool.begin(), pool.begin() + replication);
    }
    return ReplicaPlacement::from_holders(n, replication, std::move(holders));
}

}  // namespace floodsim
