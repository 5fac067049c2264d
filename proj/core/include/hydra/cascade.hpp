#ifndef HYDRA_CASCADE_HPP_
#define HYDRA_CASCADE_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "hydra/routing.hpp"

namespace hydra {

/// Targets with per-node compromise level q and a common severity alpha.
/// Effective capacity of a target becomes (1 - alpha*q) * C.
struct AttackScenario {
    std::map<NodeId, double> targets;  // node -> q in [0, 1]
    double alpha = 1.0;                // severity in [0, 1]

    void validate(const Snapshot& snapshot) const;
};

enum class Termination { FixedPoint, Disconnected, MaxIter };

const char* to_string(Termination t);

struct CascadeResult {
    std::vector<NodeId> initial_set;                  // F0: the attacked nodes
    std::vector<std::vector<NodeId>> per_iteration;   // newly failed, per iteration
    std::vector<NodeId> final_set;                    // F0 plus every later failure
    std::vector<NodeId> removed_set;                  // operationally removed nodes;
                                                      // excludes degraded targets that
                                                      // stayed under their capacity
    LoadState final_loads;
    double unserved_demand_mbps = 0.0;
    int served_flows = 0;
    int iterations = 0;
    Termination termination = Termination::FixedPoint;
};

struct CascadeConfig {
    RoutingParams routing;
    int max_iter = 50;
};

/// Effective capacities after the attack: targets get (1 - alpha*q) * C,
/// everything else is unchanged. alpha*q = 1 maps exactly to zero.
std::vector<double> degrade_capacities(const std::vector<double>& capacities,
                                       const AttackScenario& attack);

/// Strictly-overloaded nodes: { i alive : load_i > effective_cap_i }.
std::vector<NodeId> overload_check(const std::vector<double>& node_load,
                                   const std::vector<double>& effective_caps,
                                   const std::vector<char>& alive);

/// Shared per-(snapshot, flows) cascade state. The pre-attack baseline
/// routing is computed once and reused by every attack evaluated against it,
/// which is what makes per-node Monte Carlo trials affordable. run() is
/// const; concurrent callers each bring their own Workspace.
class CascadeRunner {
public:
    struct Workspace {
        std::vector<double> node_load;
        std::vector<double> edge_load;
        std::vector<double> effective_caps;
        std::vector<char> alive;
        std::vector<char> served;
        // Flows rerouted away from their baseline paths keep per-flow
        // overlay vectors; everything else reads the shared flat baseline.
        std::vector<char> overridden;
        std::vector<std::vector<NodeId>> over_nodes;
        std::vector<std::vector<EdgeId>> over_edges;
        std::vector<std::uint32_t> touched_flows;
        std::vector<char> removed_mark;  // node scratch, one entry per node
        std::vector<char>* touch_sink = nullptr;  // set internally to record
                                                  // nodes that ever carry a path
        RouterWorkspace router;
    };

    CascadeRunner(const Snapshot& snapshot, std::vector<Flow> flows,
                  const CascadeConfig& cfg);

    CascadeResult run(const AttackScenario& attack, Workspace& ws) const;
    CascadeResult run(const AttackScenario& attack) const;

    /// The loop with no shortcuts; run() must agree with it exactly.
    CascadeResult run_full(const AttackScenario& attack, Workspace& ws) const;

    const Snapshot& snapshot() const { return *snapshot_; }
    const std::vector<Flow>& flows() const { return flows_; }
    const LoadState& baseline_loads() const { return baseline_loads_; }
    std::vector<RoutedFlow> baseline_routed() const;
    /// True when no node exceeds its pristine capacity under the baseline
    /// routing (no cascade without an attack).
    bool baseline_stable() const { return baseline_stable_; }

private:
    struct PathSpan {
        const NodeId* nodes;
        const EdgeId* edges;
        std::uint32_t len;  // node count; edges are len-1
    };
    PathSpan base_path(std::size_t flow_idx) const;
    void reset_workspace(Workspace& ws) const;
    bool fast_path_applies(const AttackScenario& attack) const;
    CascadeResult compose_fast(const AttackScenario& attack) const;

    const Snapshot* snapshot_;
    std::vector<Flow> flows_;
    CascadeConfig cfg_;
    LoadState baseline_loads_;
    std::vector<std::uint32_t> base_offsets_;  // flat node paths, size F+1
    std::vector<NodeId> base_nodes_;
    std::vector<EdgeId> base_edges_;           // per flow: len-1 edges, same offsets
    std::vector<char> base_served_;
    std::vector<std::uint32_t> routing_order_; // flow indices, desc demand
    std::vector<std::vector<NodeId>> children_;  // satellite -> beam node ids
    double total_demand_ = 0.0;
    bool baseline_stable_ = true;
    // Empty-attack fixed point, shared by every pure-removal run whose
    // targets never carried a path while it unfolded: removing nodes the
    // router never chose cannot change any routing decision.
    CascadeResult no_attack_result_;
    std::vector<char> path_touched_;
};

/// Full cascade per the five-step loop: degrade, remove failed nodes,
/// reroute the flows whose paths touched them, recheck overloads, repeat to
/// a fixed point (or disconnection / iteration cap).
CascadeResult run_cascade(const Snapshot& snapshot, const std::vector<Flow>& flows,
                          const AttackScenario& attack, const CascadeConfig& cfg);

/// Hard-removal trial for one node: F0 = {v} at alpha*q = 1. Returns
/// |F_final| / (number of risk-eligible nodes). Throws DomainError for User
/// nodes.
double single_seed_cfr_trial(const Snapshot& snapshot, const std::vector<Flow>& flows,
                             NodeId v, const CascadeConfig& cfg);

}  // namespace hydra

#endif  // HYDRA_CASCADE_HPP_
