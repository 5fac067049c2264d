#ifndef HYDRA_ANALYTICS_HPP_
#define HYDRA_ANALYTICS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hydra/cascade.hpp"
#include "hydra/hypergraph.hpp"

namespace hydra {

/// Plain undirected graph for the centrality baselines, decoupled from the
/// snapshot so synthetic graphs are easy to test against.
struct SimpleGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// Snapshot's full routable graph (all edge kinds), restricted to alive nodes
/// when a mask is given.
SimpleGraph snapshot_graph(const Snapshot& snapshot, const std::vector<char>* alive = nullptr);

struct Centralities {
    std::vector<std::uint32_t> degree;
    std::vector<double> betweenness;  // normalized to [0, 1]
    std::vector<double> pagerank;     // sums to 1
};

/// Exact Brandes betweenness (unweighted) and power-iteration pagerank
/// (damping 0.85, L1 tolerance 1e-9).
Centralities centralities(const SimpleGraph& g);

/// Sample Pearson correlation; nullopt when either variance vanishes.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

/// |largest connected component| / |nodes|; 1.0 for the empty corner case is
/// not defined - callers pass non-empty graphs.
double giant_component_ratio(const SimpleGraph& g);

/// Fraction of non-internal edges whose projected load exceeds capacity
/// under the given routing.
double systemic_risk(const Snapshot& snapshot, const LoadState& loads);
double systemic_risk(const Snapshot& snapshot, const std::vector<Flow>& flows,
                     const RoutingParams& params);

/// Per-node risk table row.
struct RiskRow {
    std::string name;
    NodeKind kind = NodeKind::Satellite;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    std::uint32_t degree_phy = 0;
    double betweenness = 0.0;
    double pagerank = 0.0;
    std::optional<double> cfr;
    std::optional<double> hbc;
    std::uint32_t trial_count = 0;
    bool black_swan = false;
};

struct RiskReport {
    std::vector<RiskRow> rows;  // snapshot node order
};

/// Nearest-rank percentile of a sample (pct in (0, 100]).
double percentile_nearest_rank(std::vector<double> values, double pct);

/// Black swans: degree strictly below the delta_pct percentile of degrees
/// and HBC strictly above the tau_pct percentile of defined HBC values.
/// Returns row indices.
std::vector<std::size_t> detect_black_swans(const RiskReport& report,
                                            double delta_pct = 20.0,
                                            double tau_pct = 90.0);

struct CirValue {
    double leverage = 0.0;          // |F_final| / attacked
    double network_fraction = 0.0;  // |F_final| / total nodes (users included)
};

CirValue cir(const CascadeResult& result, std::size_t n_attacked, std::size_t n_total);

/// Numerically order-stable sum (pairwise); used for metric aggregation.
double pairwise_sum(const std::vector<double>& values);

}  // namespace hydra

#endif  // HYDRA_ANALYTICS_HPP_
