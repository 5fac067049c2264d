#include "hydra/snapshot.hpp"

#include <algorithm>
#include <set>

namespace hydra {

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Satellite: return "satellite";
        case NodeKind::UserBeam: return "user_beam";
        case NodeKind::FeederBeam: return "feeder_beam";
        case NodeKind::Gateway: return "gateway";
        case NodeKind::User: return "user";
    }
    return "?";
}

const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Isl: return "isl";
        case EdgeKind::Feeder: return "feeder";
        case EdgeKind::Access: return "access";
        case EdgeKind::Internal: return "internal";
    }
    return "?";
}

NodeId Snapshot::add_node(Node n) {
    const NodeId id = static_cast<NodeId>(nodes.size());
    name_index_.emplace(n.name, id);
    nodes.push_back(std::move(n));
    return id;
}

EdgeId Snapshot::add_edge(Edge e) {
    const EdgeId id = static_cast<EdgeId>(edges.size());
    edges.push_back(e);
    return id;
}

void Snapshot::build_adjacency() {
    adj_offsets.assign(nodes.size() + 1, 0);
    for (const Edge& e : edges) {
        ++adj_offsets[e.src + 1];
        ++adj_offsets[e.dst + 1];
    }
    for (std::size_t i = 1; i < adj_offsets.size(); ++i) adj_offsets[i] += adj_offsets[i - 1];
    adj.resize(2 * edges.size());
    std::vector<std::uint32_t> cursor(adj_offsets.begin(), adj_offsets.end() - 1);
    for (EdgeId eid = 0; eid < edges.size(); ++eid) {
        const Edge& e = edges[eid];
        adj[cursor[e.src]++] = {e.dst, eid};
        adj[cursor[e.dst]++] = {e.src, eid};
    }
}

std::optional<NodeId> Snapshot::find(const std::string& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Snapshot::risk_node_count() const {
    std::size_t n = 0;
    for (const Node& node : nodes)
        if (!node.is_user()) ++n;
    return n;
}

std::vector<std::uint32_t> Snapshot::physical_degrees() const {
    std::vector<std::uint32_t> deg(nodes.size(), 0);
    for (const Edge& e : edges) {
        if (e.kind == EdgeKind::Internal) continue;
        ++deg[e.src];
        ++deg[e.dst];
    }
    return deg;
}

namespace {

bool endpoint_kinds_ok(const Snapshot& s, const Edge& e) {
    const NodeKind a = s.nodes[e.src].kind;
    const NodeKind b = s.nodes[e.dst].kind;
    auto pair_is = [&](NodeKind x, NodeKind y) {
        return (a == x && b == y) || (a == y && b == x);
    };
    switch (e.kind) {
        case EdgeKind::Isl: return pair_is(NodeKind::Satellite, NodeKind::Satellite);
        case EdgeKind::Feeder: return pair_is(NodeKind::FeederBeam, NodeKind::Gateway);
        case EdgeKind::Access: return pair_is(NodeKind::UserBeam, NodeKind::User);
        case EdgeKind::Internal:
            return pair_is(NodeKind::UserBeam, NodeKind::Satellite) ||
                   pair_is(NodeKind::FeederBeam, NodeKind::Satellite);
    }
    return false;
}

}  // namespace

std::string Snapshot::validate() const {
    for (EdgeId eid = 0; eid < edges.size(); ++eid) {
        const Edge& e = edges[eid];
        if (e.src >= nodes.size() || e.dst >= nodes.size())
            return "edge " + std::to_string(eid) + ": dangling endpoint";
        if (e.src == e.dst) return "edge " + std::to_string(eid) + ": self loop";
        if (!endpoint_kinds_ok(*this, e))
            return "edge " + std::to_string(eid) + ": endpoint kinds invalid for " +
                   std::string(to_string(e.kind));
        if (e.capacity_mbps <= 0.0)
            return "edge " + std::to_string(eid) + ": non-positive capacity";
    }
    std::set<std::tuple<NodeId, NodeId, EdgeKind>> seen;
    for (const Edge& e : edges) {
        const NodeId lo = std::min(e.src, e.dst), hi = std::max(e.src, e.dst);
        if (!seen.insert({lo, hi, e.kind}).second)
            return "parallel edge of same kind between " + nodes[lo].name + " and " + nodes[hi].name;
    }
    for (NodeId id = 0; id < nodes.size(); ++id) {
        const Node& n = nodes[id];
        if (n.is_beam()) {
            if (n.parent != kInvalidNode &&
                (n.parent >= nodes.size() || nodes[n.parent].kind != NodeKind::Satellite))
                return "beam " + n.name + ": parent is not a satellite";
        }
        if (!n.is_user() && n.capacity_mbps < 0.0)
            return "node " + n.name + ": negative capacity";
    }
    return {};
}

}  // namespace hydra
