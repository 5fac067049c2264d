#include "hydra/routing.hpp"

#include <algorithm>
#include <queue>

#include "hydra/errors.hpp"

namespace hydra {

void RouterWorkspace::resize(std::size_t nodes) {
    if (dist.size() < nodes) {
        dist.resize(nodes);
        visit_mark.resize(nodes, 0);
        prev_node.resize(nodes);
        prev_edge.resize(nodes);
    }
}

bool route_path(const GraphView& view, NodeId src, NodeId dst,
                const RoutingParams& params, RouterWorkspace& ws,
                std::vector<NodeId>& out_nodes, std::vector<EdgeId>& out_edges) {
    out_nodes.clear();
    out_edges.clear();
    const Snapshot& snap = *view.snapshot;
    if (!view.node_alive[src] || !view.node_alive[dst]) return false;

    ws.resize(snap.node_count());
    const std::uint32_t gen = ++ws.generation;
    auto seen = [&](NodeId n) { return ws.visit_mark[n] == gen; };

    using QItem = std::pair<double, NodeId>;  // (distance, node); ties by id
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> queue;
    ws.visit_mark[src] = gen;
    ws.dist[src] = 0.0;
    ws.prev_node[src] = kInvalidNode;
    queue.push({0.0, src});

    while (!queue.empty()) {
        const auto [d, n] = queue.top();
        queue.pop();
        if (d > ws.dist[n]) continue;  // stale entry
        if (n == dst) break;
        for (std::uint32_t i = snap.adj_offsets[n]; i < snap.adj_offsets[n + 1]; ++i) {
            const auto [neighbor, eid] = snap.adj[i];
            if (!view.node_alive[neighbor]) continue;
            const Edge& e = snap.edges[eid];
            const double residual = e.capacity_mbps - view.edge_load[eid];
            if (residual <= params.residual_epsilon) continue;
            const double nd = d + 1.0 / residual + params.delta_per_ms * e.delay_ms;
            if (!seen(neighbor) || nd < ws.dist[neighbor]) {
                ws.visit_mark[neighbor] = gen;
                ws.dist[neighbor] = nd;
                ws.prev_node[neighbor] = n;
                ws.prev_edge[neighbor] = eid;
                queue.push({nd, neighbor});
            }
        }
    }

    if (!seen(dst)) return false;

    for (NodeId n = dst; n != src; n = ws.prev_node[n]) {
        out_nodes.push_back(n);
        out_edges.push_back(ws.prev_edge[n]);
    }
    out_nodes.push_back(src);
    std::reverse(out_nodes.begin(), out_nodes.end());
    std::reverse(out_edges.begin(), out_edges.end());
    return true;
}

RoutedFlow route_flow(const GraphView& view, const Flow& flow,
                      const RoutingParams& params, RouterWorkspace& ws) {
    RoutedFlow out;
    out.flow = flow;
    out.served = route_path(view, flow.user, flow.gateway, params, ws,
                            out.path_nodes, out.path_edges);
    return out;
}

std::pair<std::vector<RoutedFlow>, LoadState> route_all(const Snapshot& snapshot,
                                                        const std::vector<Flow>& flows,
                                                        const RoutingParams& params) {
    std::vector<std::size_t> order(flows.size());
    for (std::size_t i = 0; i < flows.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (flows[a].demand_mbps != flows[b].demand_mbps)
            return flows[a].demand_mbps > flows[b].demand_mbps;
        return a < b;
    });

    GraphState state(snapshot);
    RouterWorkspace ws;
    LoadState loads(snapshot);
    std::vector<RoutedFlow> routed(flows.size());
    for (std::size_t idx : order) {
        RoutedFlow r = route_flow(state.view(), flows[idx], params, ws);
        if (r.served) {
            for (NodeId n : r.path_nodes) loads.node_load[n] += r.flow.demand_mbps;
            for (EdgeId e : r.path_edges) {
                loads.edge_load[e] += r.flow.demand_mbps;
                state.edge_load[e] += r.flow.demand_mbps;
            }
        }
        routed[idx] = std::move(r);
    }
    return {std::move(routed), std::move(loads)};
}

LoadState accumulate_loads(const Snapshot& snapshot, const std::vector<RoutedFlow>& routed) {
    LoadState loads(snapshot);
    for (const RoutedFlow& r : routed) {
        if (!r.served) continue;
        for (NodeId n : r.path_nodes) {
            if (n >= snapshot.node_count()) {
                throw DomainError("accumulate_loads: path references unknown node");
            }
            loads.node_load[n] += r.flow.demand_mbps;
        }
        for (EdgeId e : r.path_edges) {
            if (e >= snapshot.edge_count()) {
                throw DomainError("accumulate_loads: path references unknown edge");
            }
            loads.edge_load[e] += r.flow.demand_mbps;
        }
    }
    return loads;
}

}  // namespace hydra
