#ifndef HYDRA_HYPERGRAPH_HPP_
#define HYDRA_HYPERGRAPH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hydra/cascade.hpp"

namespace hydra {

/// One Monte Carlo outcome: the attacked set and everything that failed.
/// Node identities are stable names so hyperedges can outlive a snapshot's
/// index space.
struct Hyperedge {
    std::uint64_t run_id = 0;
    std::vector<std::string> initial_set;
    std::vector<std::string> final_set;
};

struct FailureHypergraph {
    std::vector<std::string> vertices;  // risk-eligible node names
    std::vector<Hyperedge> hyperedges;
};

/// Aggregate cascade outcomes (from the same snapshot family) into the
/// failure hypergraph: one hyperedge per run, in run order.
FailureHypergraph build_failure_hypergraph(
    const Snapshot& snapshot,
    const std::vector<const CascadeResult*>& results);

/// Cascading failure risk of `v`: the mean of |F_final| / n_risk over the
/// runs whose initial set contains v. Nodes never attacked have no defined
/// conditional expectation and yield nullopt.
std::optional<double> cfr(const FailureHypergraph& h, const std::string& v,
                          std::size_t n_risk);

/// Runs in which `v` was part of the initial set.
std::size_t trial_count(const FailureHypergraph& h, const std::string& v);

/// Hyper-bridge centrality: cfr / log(1 + physical degree), natural log.
/// Degree-0 nodes are excluded from ranking and yield nullopt.
std::optional<double> hbc(std::optional<double> cfr_value, std::uint32_t degree_phy);

}  // namespace hydra

#endif  // HYDRA_HYPERGRAPH_HPP_
