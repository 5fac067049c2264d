#ifndef HYDRA_SNAPSHOT_HPP_
#define HYDRA_SNAPSHOT_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hydra/geo.hpp"
#include "hydra/time.hpp"

namespace hydra {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t { Satellite, UserBeam, FeederBeam, Gateway, User };
enum class EdgeKind : std::uint8_t { Isl, Feeder, Access, Internal };

const char* to_string(NodeKind k);
const char* to_string(EdgeKind k);

struct Node {
    std::string name;
    NodeKind kind = NodeKind::Satellite;
    Vec3 pos_ecef;                       // km
    std::optional<GeodeticPosition> geodetic;
    double capacity_mbps = 0.0;          // effective service capacity C_i
    double hardware_cap_mbps = 0.0;      // satellite C_hw; 0 for other kinds
    NodeId parent = kInvalidNode;        // beams: owning satellite
    // Traffic attributes, populated for User nodes.
    double pop_weight = 0.0;
    double adoption_beta = 0.0;

    bool is_user() const { return kind == NodeKind::User; }
    bool is_beam() const { return kind == NodeKind::UserBeam || kind == NodeKind::FeederBeam; }
};

struct Edge {
    NodeId src = kInvalidNode;
    NodeId dst = kInvalidNode;
    EdgeKind kind = EdgeKind::Isl;
    double capacity_mbps = 0.0;
    double delay_ms = 0.0;
    double length_km = 0.0;
};

/// One static sample of the time-varying multi-layer graph. Immutable once
/// built; engines layer their mutable state (loads, alive masks) on top.
struct Snapshot {
    EpochTime time;
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    struct Adjacent {
        NodeId neighbor;
        EdgeId edge;
    };
    // CSR adjacency over undirected edges, in edge insertion order per node.
    std::vector<std::uint32_t> adj_offsets;
    std::vector<Adjacent> adj;

    NodeId add_node(Node n);
    EdgeId add_edge(Edge e);
    /// Build the adjacency index; call once after the last add_edge.
    void build_adjacency();

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }

    std::optional<NodeId> find(const std::string& name) const;

    /// Nodes eligible for risk ranking: everything except User terminals.
    bool risk_eligible(NodeId id) const { return !nodes[id].is_user(); }
    std::size_t risk_node_count() const;

    /// Degree over all edge kinds except Internal.
    std::vector<std::uint32_t> physical_degrees() const;

    /// Structural checks used by builder tests: typed endpoints, no dangling
    /// ids, no duplicate same-kind edges, beams referencing satellites.
    /// Returns an explanation for the first violation, or empty if clean.
    std::string validate() const;

private:
    std::unordered_map<std::string, NodeId> name_index_;
};

}  // namespace hydra

#endif  // HYDRA_SNAPSHOT_HPP_
