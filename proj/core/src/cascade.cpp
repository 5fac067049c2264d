#include "hydra/cascade.hpp"

#include <algorithm>
#include <cmath>

#include "hydra/errors.hpp"

namespace hydra {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::FixedPoint: return "fixed_point";
        case Termination::Disconnected: return "disconnected";
        case Termination::MaxIter: return "max_iter";
    }
    return "?";
}

void AttackScenario::validate(const Snapshot& snapshot) const {
    if (alpha < 0.0 || alpha > 1.0) {
        throw DomainError("attack: alpha outside [0, 1]");
    }
    for (const auto& [node, q] : targets) {
        if (node >= snapshot.node_count()) {
            throw DomainError("attack: unknown target node id");
        }
        if (snapshot.nodes[node].is_user()) {
            throw DomainError("attack: User nodes cannot be targeted");
        }
        if (q < 0.0 || q > 1.0) {
            throw DomainError("attack: q outside [0, 1]");
        }
    }
}

std::vector<double> degrade_capacities(const std::vector<double>& capacities,
                                       const AttackScenario& attack) {
    std::vector<double> out = capacities;
    for (const auto& [node, q] : attack.targets) {
        const double aq = attack.alpha * q;
        out[node] = aq >= 1.0 ? 0.0 : (1.0 - aq) * out[node];
    }
    return out;
}

std::vector<NodeId> overload_check(const std::vector<double>& node_load,
                                   const std::vector<double>& effective_caps,
                                   const std::vector<char>& alive) {
    std::vector<NodeId> failed;
    for (NodeId i = 0; i < node_load.size(); ++i) {
        if (alive[i] && node_load[i] > effective_caps[i]) failed.push_back(i);
    }
    return failed;
}

CascadeRunner::CascadeRunner(const Snapshot& snapshot, std::vector<Flow> flows,
                             const CascadeConfig& cfg)
    : snapshot_(&snapshot), flows_(std::move(flows)), cfg_(cfg) {
    auto [routed, loads] = route_all(snapshot, flows_, cfg_.routing);
    baseline_loads_ = std::move(loads);

    base_offsets_.assign(flows_.size() + 1, 0);
    base_served_.assign(flows_.size(), 0);
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        base_offsets_[i + 1] = base_offsets_[i] +
                               static_cast<std::uint32_t>(routed[i].path_nodes.size());
        total_demand_ += flows_[i].demand_mbps;
    }
    base_nodes_.reserve(base_offsets_.back());
    base_edges_.reserve(base_offsets_.back());
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        base_served_[i] = routed[i].served ? 1 : 0;
        base_nodes_.insert(base_nodes_.end(), routed[i].path_nodes.begin(),
                           routed[i].path_nodes.end());
        base_edges_.insert(base_edges_.end(), routed[i].path_edges.begin(),
                           routed[i].path_edges.end());
        // Pad so edges share the node offsets (a path of L nodes has L-1 edges).
        if (!routed[i].path_nodes.empty()) base_edges_.push_back(0);
    }

    routing_order_.resize(flows_.size());
    for (std::uint32_t i = 0; i < flows_.size(); ++i) routing_order_[i] = i;
    std::sort(routing_order_.begin(), routing_order_.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  if (flows_[a].demand_mbps != flows_[b].demand_mbps)
                      return flows_[a].demand_mbps > flows_[b].demand_mbps;
                  return a < b;
              });

    children_.resize(snapshot.node_count());
    for (NodeId id = 0; id < snapshot.node_count(); ++id) {
        const Node& n = snapshot.nodes[id];
        if (n.is_beam() && n.parent != kInvalidNode) children_[n.parent].push_back(id);
    }

    for (NodeId id = 0; id < snapshot.node_count(); ++id) {
        if (baseline_loads_.node_load[id] > snapshot.nodes[id].capacity_mbps) {
            baseline_stable_ = false;
            break;
        }
    }

    path_touched_.assign(snapshot.node_count(), 0);
    Workspace ws;
    ws.touch_sink = &path_touched_;
    no_attack_result_ = run_full(AttackScenario{}, ws);
}

CascadeRunner::PathSpan CascadeRunner::base_path(std::size_t i) const {
    const std::uint32_t begin = base_offsets_[i];
    const std::uint32_t len = base_offsets_[i + 1] - begin;
    return {base_nodes_.data() + begin, base_edges_.data() + begin, len};
}

std::vector<RoutedFlow> CascadeRunner::baseline_routed() const {
    std::vector<RoutedFlow> out(flows_.size());
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        out[i].flow = flows_[i];
        out[i].served = base_served_[i] != 0;
        const PathSpan p = base_path(i);
        out[i].path_nodes.assign(p.nodes, p.nodes + p.len);
        if (p.len > 0) out[i].path_edges.assign(p.edges, p.edges + p.len - 1);
    }
    return out;
}

void CascadeRunner::reset_workspace(Workspace& ws) const {
    const Snapshot& snap = *snapshot_;
    ws.node_load.assign(baseline_loads_.node_load.begin(), baseline_loads_.node_load.end());
    ws.edge_load.assign(baseline_loads_.edge_load.begin(), baseline_loads_.edge_load.end());
    ws.effective_caps.resize(snap.node_count());
    for (NodeId i = 0; i < snap.node_count(); ++i)
        ws.effective_caps[i] = snap.nodes[i].capacity_mbps;
    ws.alive.assign(snap.node_count(), 1);
    ws.served.assign(base_served_.begin(), base_served_.end());
    if (ws.overridden.size() != flows_.size()) {
        ws.overridden.assign(flows_.size(), 0);
        ws.over_nodes.resize(flows_.size());
        ws.over_edges.resize(flows_.size());
    } else {
        for (std::uint32_t f : ws.touched_flows) ws.overridden[f] = 0;
    }
    ws.touched_flows.clear();
    ws.removed_mark.assign(snap.node_count(), 0);
}

bool CascadeRunner::fast_path_applies(const AttackScenario& attack) const {
    if (attack.targets.empty()) return true;
    for (const auto& [node, q] : attack.targets) {
        if (attack.alpha * q < 1.0) return false;  // degraded survivor: full run
        if (path_touched_[node]) return false;
        for (NodeId beam : children_[node]) {
            if (path_touched_[beam]) return false;
        }
    }
    return true;
}

CascadeResult CascadeRunner::compose_fast(const AttackScenario& attack) const {
    CascadeResult result = no_attack_result_;
    if (attack.targets.empty()) return result;

    std::vector<char> in_final(snapshot_->node_count(), 0);
    for (NodeId n : result.final_set) in_final[n] = 1;
    std::vector<NodeId> extra;
    for (const auto& [node, q] : attack.targets) {
        result.initial_set.push_back(node);
        if (!in_final[node]) {
            in_final[node] = 1;
            extra.push_back(node);
        }
        for (NodeId beam : children_[node]) {
            if (!in_final[beam]) {
                in_final[beam] = 1;
                extra.push_back(beam);
                // Coupled beams are casualties, not attack targets.
                if (!result.per_iteration.empty()) result.per_iteration[0].push_back(beam);
            }
        }
    }
    std::sort(result.initial_set.begin(), result.initial_set.end());
    result.final_set.insert(result.final_set.end(), extra.begin(), extra.end());
    std::sort(result.final_set.begin(), result.final_set.end());
    result.removed_set.insert(result.removed_set.end(), extra.begin(), extra.end());
    std::sort(result.removed_set.begin(), result.removed_set.end());
    return result;
}

CascadeResult CascadeRunner::run(const AttackScenario& attack, Workspace& ws) const {
    attack.validate(*snapshot_);
    if (fast_path_applies(attack)) return compose_fast(attack);
    return run_full(attack, ws);
}

CascadeResult CascadeRunner::run_full(const AttackScenario& attack, Workspace& ws) const {
    const Snapshot& snap = *snapshot_;
    attack.validate(snap);

    CascadeResult result;
    result.initial_set.reserve(attack.targets.size());
    for (const auto& [node, q] : attack.targets) result.initial_set.push_back(node);

    std::vector<char> failed(snap.node_count(), 0);  // for metrics (F_final)
    for (NodeId n : result.initial_set) failed[n] = 1;

    reset_workspace(ws);
    for (const auto& [node, q] : attack.targets) {
        const double aq = attack.alpha * q;
        ws.effective_caps[node] = aq >= 1.0 ? 0.0 : (1.0 - aq) * ws.effective_caps[node];
    }

    // Attack casualties removed before iteration 1: alpha*q = 1 targets and,
    // through parent coupling, their beams.
    std::vector<NodeId> pending;       // to remove at the next Step 2
    std::vector<NodeId> pending_record;  // newly failed nodes not yet in F0
    for (const auto& [node, q] : attack.targets) {
        if (attack.alpha * q >= 1.0) pending.push_back(node);
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
        for (NodeId beam : children_[pending[i]]) {
            if (!failed[beam]) {
                failed[beam] = 1;
                pending.push_back(beam);
                pending_record.push_back(beam);
            }
        }
    }

    auto current_path_nodes = [&](std::uint32_t f, const NodeId*& nodes, std::uint32_t& len) {
        if (ws.overridden[f]) {
            nodes = ws.over_nodes[f].data();
            len = static_cast<std::uint32_t>(ws.over_nodes[f].size());
        } else {
            const PathSpan p = base_path(f);
            nodes = p.nodes;
            len = p.len;
        }
    };
    auto current_path_edges = [&](std::uint32_t f, const EdgeId*& edges, std::uint32_t& len) {
        if (ws.overridden[f]) {
            edges = ws.over_edges[f].data();
            len = static_cast<std::uint32_t>(ws.over_edges[f].size());
        } else {
            const PathSpan p = base_path(f);
            edges = p.edges;
            len = p.len > 0 ? p.len - 1 : 0;
        }
    };

    std::vector<std::uint32_t> affected;
    std::vector<NodeId> scratch_nodes;
    std::vector<EdgeId> scratch_edges;
    const GraphView view{&snap, ws.alive.data(), ws.edge_load.data()};

    if (ws.touch_sink) {
        for (std::uint32_t f = 0; f < flows_.size(); ++f) {
            if (!base_served_[f]) continue;
            const PathSpan p = base_path(f);
            for (std::uint32_t i = 0; i < p.len; ++i) (*ws.touch_sink)[p.nodes[i]] = 1;
        }
    }

    int k = 0;
    while (true) {
        if (k >= cfg_.max_iter) {
            result.termination = Termination::MaxIter;
            break;
        }
        ++k;

        // Step 2: drop failed nodes (and, transitively, any flow using them).
        for (NodeId n : pending) {
            ws.alive[n] = 0;
            ws.removed_mark[n] = 1;
        }

        // Step 3: reroute exactly the flows whose paths touched removed nodes.
        affected.clear();
        if (!pending.empty()) {
            for (std::uint32_t f : routing_order_) {
                if (!ws.served[f]) continue;
                const NodeId* nodes;
                std::uint32_t len;
                current_path_nodes(f, nodes, len);
                for (std::uint32_t i = 0; i < len; ++i) {
                    if (ws.removed_mark[nodes[i]]) {
                        affected.push_back(f);
                        break;
                    }
                }
            }
            // Release every affected reservation before rerouting any of them.
            for (std::uint32_t f : affected) {
                const double d = flows_[f].demand_mbps;
                const NodeId* nodes;
                const EdgeId* edges;
                std::uint32_t nlen, elen;
                current_path_nodes(f, nodes, nlen);
                current_path_edges(f, edges, elen);
                for (std::uint32_t i = 0; i < nlen; ++i) ws.node_load[nodes[i]] -= d;
                for (std::uint32_t i = 0; i < elen; ++i) ws.edge_load[edges[i]] -= d;
                ws.served[f] = 0;
            }
            for (std::uint32_t f : affected) {
                const Flow& flow = flows_[f];
                if (!ws.overridden[f]) {
                    ws.overridden[f] = 1;
                    ws.touched_flows.push_back(f);
                }
                const bool ok = ws.alive[flow.user] && ws.alive[flow.gateway] &&
                                route_path(view, flow.user, flow.gateway, cfg_.routing,
                                           ws.router, scratch_nodes, scratch_edges);
                if (ok) {
                    ws.over_nodes[f] = scratch_nodes;
                    ws.over_edges[f] = scratch_edges;
                    ws.served[f] = 1;
                    for (NodeId n : scratch_nodes) ws.node_load[n] += flow.demand_mbps;
                    for (EdgeId e : scratch_edges) ws.edge_load[e] += flow.demand_mbps;
                    if (ws.touch_sink) {
                        for (NodeId n : scratch_nodes) (*ws.touch_sink)[n] = 1;
                    }
                } else {
                    ws.over_nodes[f].clear();
                    ws.over_edges[f].clear();
                }
            }
        }
        for (NodeId n : pending) ws.removed_mark[n] = 0;
        pending.clear();

        int served = 0;
        for (char s : ws.served) served += s;
        if (!flows_.empty() && served == 0) {
            result.per_iteration.push_back(std::move(pending_record));
            result.termination = Termination::Disconnected;
            break;
        }

        // Step 4: strict overload test against degraded capacities, plus
        // parent coupling: beams never outlive their satellite.
        std::vector<NodeId> newly = std::move(pending_record);
        pending_record = {};
        bool any_overload = false;
        for (NodeId i = 0; i < snap.node_count(); ++i) {
            if (ws.alive[i] && ws.node_load[i] > ws.effective_caps[i]) {
                any_overload = true;
                if (!failed[i]) {
                    failed[i] = 1;
                    newly.push_back(i);
                }
                pending.push_back(i);
                for (NodeId beam : children_[i]) {
                    if (ws.alive[beam]) {
                        pending.push_back(beam);
                        if (!failed[beam]) {
                            failed[beam] = 1;
                            newly.push_back(beam);
                        }
                    }
                }
            }
        }
        result.per_iteration.push_back(std::move(newly));

        // Step 5: F_{k+1} == F_k means a fixed point.
        if (!any_overload) {
            result.termination = Termination::FixedPoint;
            break;
        }
    }

    result.iterations = k;
    for (NodeId i = 0; i < snap.node_count(); ++i) {
        if (failed[i]) result.final_set.push_back(i);
        if (!ws.alive[i]) result.removed_set.push_back(i);
    }
    result.final_loads.node_load = ws.node_load;
    result.final_loads.edge_load = ws.edge_load;
    result.served_flows = 0;
    result.unserved_demand_mbps = 0.0;
    for (std::uint32_t f = 0; f < flows_.size(); ++f) {
        if (ws.served[f]) ++result.served_flows;
        else result.unserved_demand_mbps += flows_[f].demand_mbps;
    }
    return result;
}

CascadeResult CascadeRunner::run(const AttackScenario& attack) const {
    Workspace ws;
    return run(attack, ws);
}

CascadeResult run_cascade(const Snapshot& snapshot, const std::vector<Flow>& flows,
                          const AttackScenario& attack, const CascadeConfig& cfg) {
    CascadeRunner runner(snapshot, flows, cfg);
    return runner.run(attack);
}

double single_seed_cfr_trial(const Snapshot& snapshot, const std::vector<Flow>& flows,
                             NodeId v, const CascadeConfig& cfg) {
    if (v >= snapshot.node_count() || snapshot.nodes[v].is_user()) {
        throw DomainError("single_seed_cfr_trial: target must be a non-User node");
    }
    AttackScenario attack;
    attack.alpha = 1.0;
    attack.targets[v] = 1.0;
    const CascadeResult result = run_cascade(snapshot, flows, attack, cfg);
    const std::size_t n_risk = snapshot.risk_node_count();
    return static_cast<double>(result.final_set.size()) / static_cast<double>(n_risk);
}

}  // namespace hydra
