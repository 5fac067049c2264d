#ifndef HYDRA_ROUTING_HPP_
#define HYDRA_ROUTING_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "hydra/snapshot.hpp"
#include "hydra/traffic.hpp"

namespace hydra {

/// Aggregate Mbps carried per node and per edge, indexed like the snapshot.
struct LoadState {
    std::vector<double> node_load;
    std::vector<double> edge_load;

    explicit LoadState(const Snapshot& s)
        : node_load(s.node_count(), 0.0), edge_load(s.edge_count(), 0.0) {}
    LoadState() = default;
};

struct RoutedFlow {
    Flow flow;
    std::vector<NodeId> path_nodes;  // empty when unserved
    std::vector<EdgeId> path_edges;
    bool served = false;
};

struct RoutingParams {
    double delta_per_ms = 1e-4;     // latency weighting coefficient
    double residual_epsilon = 1e-9; // edges at or below this residual are unusable
};

/// Non-owning view the router reads: which nodes survive and the current
/// per-edge loads. Node capacities deliberately do not enter edge weights;
/// node exhaustion is the cascade engine's business.
struct GraphView {
    const Snapshot* snapshot = nullptr;
    const char* node_alive = nullptr;   // node_count entries
    const double* edge_load = nullptr;  // edge_count entries
};

/// Owning convenience wrapper around GraphView.
struct GraphState {
    const Snapshot* snapshot = nullptr;
    std::vector<char> node_alive;
    std::vector<double> edge_load;

    explicit GraphState(const Snapshot& s)
        : snapshot(&s), node_alive(s.node_count(), 1), edge_load(s.edge_count(), 0.0) {}

    GraphView view() const { return {snapshot, node_alive.data(), edge_load.data()}; }
};

/// Scratch buffers so repeated Dijkstra runs do not reallocate.
class RouterWorkspace {
public:
    void resize(std::size_t nodes);

    std::vector<double> dist;
    std::vector<std::uint32_t> visit_mark;
    std::vector<NodeId> prev_node;
    std::vector<EdgeId> prev_edge;
    std::uint32_t generation = 0;
};

/// Load-aware shortest path: edge weight 1/(capacity - load) + delta * delay,
/// edges with residual <= epsilon excluded. Search stops at the destination.
/// Returns false (and clears the outputs) when no path exists.
bool route_path(const GraphView& view, NodeId src, NodeId dst,
                const RoutingParams& params, RouterWorkspace& ws,
                std::vector<NodeId>& out_nodes, std::vector<EdgeId>& out_edges);

/// Flow-level wrapper; served=false when the flow cannot be routed.
RoutedFlow route_flow(const GraphView& view, const Flow& flow,
                      const RoutingParams& params, RouterWorkspace& ws);

/// Route all flows sequentially (descending demand, then input index), each
/// seeing the loads accumulated by its predecessors. Returns routed flows in
/// input order plus the final load state.
std::pair<std::vector<RoutedFlow>, LoadState> route_all(const Snapshot& snapshot,
                                                        const std::vector<Flow>& flows,
                                                        const RoutingParams& params);

/// Recount loads from routed paths; the additive ground truth.
LoadState accumulate_loads(const Snapshot& snapshot, const std::vector<RoutedFlow>& routed);

}  // namespace hydra

#endif  // HYDRA_ROUTING_HPP_
