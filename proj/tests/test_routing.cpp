#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "hydra/rng.hpp"
#include "hydra/routing.hpp"
#include "support/synthetic.hpp"

using namespace hydra;
using hydra::testsupport::GraphBuilder;

namespace {

// Random connected graph: a random spanning tree plus extra edges. Node 0 is
// the user, the last node the gateway, everything else satellites.
Snapshot random_graph(Rng& rng, int n, double capacity, int extra_edges) {
    GraphBuilder b;
    b.user("U");
    for (int i = 1; i + 1 < n; ++i) b.satellite("S" + std::to_string(i));
    b.gateway("G");
    std::set<std::pair<NodeId, NodeId>> present;
    for (int i = 1; i < n; ++i) {
        const NodeId j = static_cast<NodeId>(uniform_index(rng, i));
        b.link(j, static_cast<NodeId>(i), capacity, 1.0 + uniform01(rng));
        present.insert({std::min<NodeId>(j, i), std::max<NodeId>(j, i)});
    }
    for (int k = 0; k < extra_edges; ++k) {
        const NodeId a = static_cast<NodeId>(uniform_index(rng, n));
        const NodeId c = static_cast<NodeId>(uniform_index(rng, n));
        if (a == c) continue;
        const auto key = std::make_pair(std::min(a, c), std::max(a, c));
        if (present.insert(key).second) b.link(a, c, capacity, 1.0 + uniform01(rng));
    }
    return b.finish();
}

int bfs_hops(const Snapshot& snap, NodeId src, NodeId dst) {
    std::vector<int> dist(snap.node_count(), -1);
    std::queue<NodeId> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        const NodeId v = q.front();
        q.pop();
        if (v == dst) return dist[v];
        for (std::uint32_t i = snap.adj_offsets[v]; i < snap.adj_offsets[v + 1]; ++i) {
            const NodeId w = snap.adj[i].neighbor;
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("zero-load uniform-capacity routing minimizes hops (BFS oracle)") {
    Rng rng(2024);
    RoutingParams params{0.0, 1e-9};  // delta 0
    RouterWorkspace ws;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(uniform_index(rng, 27));
        const Snapshot snap = random_graph(rng, n, 100.0, n);
        GraphState state(snap);
        Flow flow{0, static_cast<NodeId>(n - 1), 1.0};
        const RoutedFlow r = route_flow(state.view(), flow, params, ws);
        const int oracle = bfs_hops(snap, flow.user, flow.gateway);
        REQUIRE(r.served);
        CHECK(static_cast<int>(r.path_edges.size()) == oracle);
    }
}

TEST_CASE("load-aware weight avoids the congested parallel route") {
    GraphBuilder b;
    const NodeId u = b.user("U");
    const NodeId a1 = b.satellite("A1"), a2 = b.satellite("A2");
    const NodeId b1 = b.satellite("B1"), b2 = b.satellite("B2");
    const NodeId g = b.gateway("G");
    const double cap = 100.0;
    std::vector<EdgeId> route_a{b.link(u, a1, cap), b.link(a1, a2, cap), b.link(a2, g, cap)};
    std::vector<EdgeId> route_b{b.link(u, b1, cap), b.link(b1, b2, cap), b.link(b2, g, cap)};
    const Snapshot snap = b.finish();

    GraphState state(snap);
    for (EdgeId e : route_a) state.edge_load[e] = 90.0;  // 0.9 C
    RouterWorkspace ws;
    const RoutedFlow r = route_flow(state.view(), Flow{u, g, 5.0}, RoutingParams{0.0, 1e-9}, ws);
    REQUIRE(r.served);
    // Hand weights: loaded route 3/10 = 0.3, clean route 3/100 = 0.03.
    CHECK(r.path_nodes == std::vector<NodeId>{u, b1, b2, g});
}

TEST_CASE("disconnected source is unserved, not an error") {
    GraphBuilder b;
    const NodeId u = b.user("U");
    const NodeId g = b.gateway("G");
    b.satellite("S");
    const Snapshot snap = b.finish();
    GraphState state(snap);
    RouterWorkspace ws;
    const RoutedFlow r = route_flow(state.view(), Flow{u, g, 1.0}, RoutingParams{}, ws);
    CHECK_FALSE(r.served);
    CHECK(r.path_nodes.empty());
}

TEST_CASE("saturated edges are excluded from rerouting") {
    GraphBuilder b;
    const NodeId u = b.user("U");
    const NodeId s = b.satellite("S");
    const NodeId g = b.gateway("G");
    const EdgeId e1 = b.link(u, s, 5.0);
    b.link(s, g, 100.0);
    const Snapshot snap = b.finish();
    GraphState state(snap);
    state.edge_load[e1] = 5.0;  // residual exactly zero
    RouterWorkspace ws;
    const RoutedFlow r = route_flow(state.view(), Flow{u, g, 1.0}, RoutingParams{}, ws);
    CHECK_FALSE(r.served);
}

TEST_CASE("route_all fills sequentially and deterministically") {
    SUBCASE("empty flow list") {
        GraphBuilder b;
        b.user("U");
        b.gateway("G");
        const Snapshot snap = b.finish();
        const auto [routed, loads] = route_all(snap, {}, RoutingParams{});
        CHECK(routed.empty());
        for (double v : loads.node_load) CHECK(v == 0.0);
    }
    SUBCASE("total demand below the bottleneck is fully served") {
        GraphBuilder b;
        const NodeId u = b.user("U");
        const NodeId s = b.satellite("S");
        const NodeId g = b.gateway("G");
        b.link(u, s, 100.0);
        b.link(s, g, 100.0);
        const Snapshot snap = b.finish();
        std::vector<Flow> flows{{u, g, 10.0}, {u, g, 20.0}, {u, g, 30.0}};
        const auto [routed, loads] = route_all(snap, flows, RoutingParams{});
        for (const RoutedFlow& r : routed) CHECK(r.served);
        CHECK(loads.node_load[s] == doctest::Approx(60.0));
        CHECK(loads.node_load[u] == doctest::Approx(60.0));
        CHECK(loads.node_load[g] == doctest::Approx(60.0));
    }
    SUBCASE("identical inputs give bitwise-identical load states") {
        Rng rng(5);
        const Snapshot snap = random_graph(rng, 12, 50.0, 14);
        std::vector<Flow> flows;
        for (int i = 0; i < 6; ++i) {
            flows.push_back({0, static_cast<NodeId>(snap.node_count() - 1),
                             1.0 + static_cast<double>(i)});
        }
        const auto [r1, l1] = route_all(snap, flows, RoutingParams{});
        const auto [r2, l2] = route_all(snap, flows, RoutingParams{});
        for (std::size_t i = 0; i < l1.node_load.size(); ++i)
            CHECK(l1.node_load[i] == l2.node_load[i]);
        for (std::size_t i = 0; i < l1.edge_load.size(); ++i)
            CHECK(l1.edge_load[i] == l2.edge_load[i]);
    }
    SUBCASE("input permutation does not change the outcome") {
        Rng rng(8);
        const Snapshot snap = random_graph(rng, 14, 40.0, 16);
        const NodeId g = static_cast<NodeId>(snap.node_count() - 1);
        std::vector<Flow> flows{{0, g, 7.0}, {0, g, 3.0}, {0, g, 11.0}, {0, g, 5.0}};
        std::vector<Flow> shuffled{{0, g, 5.0}, {0, g, 11.0}, {0, g, 3.0}, {0, g, 7.0}};
        const auto [r1, l1] = route_all(snap, flows, RoutingParams{});
        const auto [r2, l2] = route_all(snap, shuffled, RoutingParams{});
        for (std::size_t i = 0; i < l1.edge_load.size(); ++i)
            CHECK(l1.edge_load[i] == doctest::Approx(l2.edge_load[i]).epsilon(1e-15));
        // The same demands take the same paths regardless of input order.
        std::multimap<double, std::vector<NodeId>> paths1, paths2;
        for (const auto& r : r1) paths1.insert({r.flow.demand_mbps, r.path_nodes});
        for (const auto& r : r2) paths2.insert({r.flow.demand_mbps, r.path_nodes});
        CHECK(paths1 == paths2);
    }
}

TEST_CASE("accumulate_loads recounts exactly") {
    Rng rng(31);
    const Snapshot snap = random_graph(rng, 10, 30.0, 10);
    const NodeId g = static_cast<NodeId>(snap.node_count() - 1);
    std::vector<Flow> flows;
    for (int i = 0; i < 6; ++i) flows.push_back({0, g, 1.0 + uniform01(rng) * 9.0});
    const auto [routed, loads] = route_all(snap, flows, RoutingParams{});
    const LoadState recount = accumulate_loads(snap, routed);

    // Brute-force recount oracle over the stored paths.
    std::map<NodeId, double> node_oracle;
    for (const RoutedFlow& r : routed) {
        if (!r.served) continue;
        for (NodeId n : r.path_nodes) node_oracle[n] += r.flow.demand_mbps;
    }
    for (NodeId n = 0; n < snap.node_count(); ++n) {
        const double expect = node_oracle.count(n) ? node_oracle[n] : 0.0;
        CHECK(recount.node_load[n] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(recount.node_load[n] == doctest::Approx(loads.node_load[n]).epsilon(1e-12));
    }

    // One flow on a path loads all of its nodes by the demand.
    GraphBuilder b;
    const NodeId u = b.user("U");
    const NodeId ub = b.user_beam("B");
    const NodeId s = b.satellite("S");
    const NodeId gw = b.gateway("G");
    b.link(u, ub, 100.0, 1.0, EdgeKind::Access);
    b.link(ub, s, 100.0, 0.0, EdgeKind::Internal);
    b.link(s, gw, 100.0, 1.0, EdgeKind::Feeder);
    const Snapshot path_snap = b.finish();
    const auto [routed2, loads2] = route_all(path_snap, {{u, gw, 5.0}}, RoutingParams{});
    REQUIRE(routed2[0].served);
    for (NodeId n : {u, ub, s, gw}) CHECK(loads2.node_load[n] == doctest::Approx(5.0));
}

TEST_CASE("load conservation: user load totals served demand") {
    Rng rng(77);
    const Snapshot snap = random_graph(rng, 16, 25.0, 20);
    const NodeId g = static_cast<NodeId>(snap.node_count() - 1);
    std::vector<Flow> flows;
    for (int i = 0; i < 8; ++i) flows.push_back({0, g, 1.0 + uniform01(rng) * 4.0});
    const auto [routed, loads] = route_all(snap, flows, RoutingParams{});
    double served = 0.0;
    for (const RoutedFlow& r : routed)
        if (r.served) served += r.flow.demand_mbps;
    CHECK(loads.node_load[0] == doctest::Approx(served).epsilon(1e-12));
}
