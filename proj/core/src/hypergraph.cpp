#include "hydra/hypergraph.hpp"

#include <algorithm>
#include <cmath>

namespace hydra {

FailureHypergraph build_failure_hypergraph(
    const Snapshot& snapshot,
    const std::vector<const CascadeResult*>& results) {
    FailureHypergraph h;
    for (NodeId id = 0; id < snapshot.node_count(); ++id) {
        if (snapshot.risk_eligible(id)) h.vertices.push_back(snapshot.nodes[id].name);
    }
    h.hyperedges.reserve(results.size());
    std::uint64_t run_id = 0;
    for (const CascadeResult* r : results) {
        Hyperedge e;
        e.run_id = run_id++;
        e.initial_set.reserve(r->initial_set.size());
        for (NodeId n : r->initial_set) e.initial_set.push_back(snapshot.nodes[n].name);
        e.final_set.reserve(r->final_set.size());
        for (NodeId n : r->final_set) e.final_set.push_back(snapshot.nodes[n].name);
        h.hyperedges.push_back(std::move(e));
    }
    return h;
}

std::optional<double> cfr(const FailureHypergraph& h, const std::string& v,
                          std::size_t n_risk) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Hyperedge& e : h.hyperedges) {
        if (std::find(e.initial_set.begin(), e.initial_set.end(), v) == e.initial_set.end())
            continue;
        sum += static_cast<double>(e.final_set.size()) / static_cast<double>(n_risk);
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

std::size_t trial_count(const FailureHypergraph& h, const std::string& v) {
    std::size_t count = 0;
    for (const Hyperedge& e : h.hyperedges) {
        if (std::find(e.initial_set.begin(), e.initial_set.end(), v) != e.initial_set.end())
            ++count;
    }
    return count;
}

std::optional<double> hbc(std::optional<double> cfr_value, std::uint32_t degree_phy) {
    if (!cfr_value || degree_phy < 1) return std::nullopt;
    return *cfr_value / std::log(1.0 + static_cast<double>(degree_phy));
}

}  // namespace hydra
