#include "hydra/traffic.hpp"

#include <cmath>

#include "hydra/errors.hpp"
#include "hydra/rng.hpp"

namespace hydra {

double diurnal_factor(double lon_deg, const EpochTime& t,
                      double sigma_hours, double floor) {
    double local_hour = std::fmod(t.utc_hour_of_day() + lon_deg / 15.0, 24.0);
    if (local_hour < 0.0) local_hour += 24.0;
    double delta = std::fabs(local_hour - 21.0);
    if (delta > 12.0) delta = 24.0 - delta;
    const double gauss = std::exp(-delta * delta / (2.0 * sigma_hours * sigma_hours));
    return floor + (1.0 - floor) * gauss;
}

double reference_capacity_mbps(const Snapshot& snapshot) {
    // Beams with no attached users offer no capacity to the load being
    // scaled; counting them would couple the stress level to the beam
    // budget instead of the served footprint.
    std::vector<char> serving(snapshot.nodes.size(), 0);
    for (const Edge& e : snapshot.edges) {
        if (e.kind != EdgeKind::Access) continue;
        serving[snapshot.nodes[e.src].kind == NodeKind::UserBeam ? e.src : e.dst] = 1;
    }
    double total = 0.0;
    for (NodeId id = 0; id < snapshot.nodes.size(); ++id) {
        if (serving[id]) total += snapshot.nodes[id].capacity_mbps;
    }
    return total;
}

std::vector<Flow> generate_flows(const Snapshot& snapshot, const DemandProfile& profile,
                                 const EpochTime& t, std::uint64_t seed) {
    std::vector<NodeId> gateways;
    std::vector<NodeId> users;
    for (NodeId id = 0; id < snapshot.nodes.size(); ++id) {
        if (snapshot.nodes[id].kind == NodeKind::Gateway) gateways.push_back(id);
        if (snapshot.nodes[id].kind == NodeKind::User) users.push_back(id);
    }
    if (gateways.empty()) {
        throw ConfigError("generate_flows: snapshot has no gateways");
    }

    Rng rng(mix_seed(seed, 0x666c6f77ull));
    std::vector<Flow> flows;
    flows.reserve(users.size());
    for (NodeId u : users) {
        const Node& n = snapshot.nodes[u];
        const double lon = n.geodetic ? n.geodetic->lon_deg : 0.0;
        Flow f;
        f.user = u;
        f.gateway = gateways[uniform_index(rng, gateways.size())];
        f.demand_mbps = n.pop_weight * n.adoption_beta *
                        diurnal_factor(lon, t, profile.sigma_hours, profile.floor);
        flows.push_back(f);
    }

    double raw_total = 0.0;
    for (const Flow& f : flows) raw_total += f.demand_mbps;
    const double reference = reference_capacity_mbps(snapshot);
    if (reference > 0.0 && raw_total > 0.0) {
        scale_demands(flows, profile.target_load, reference);
    }
    return flows;
}

void scale_demands(std::vector<Flow>& flows, double target_load,
                   double reference_capacity) {
    if (reference_capacity <= 0.0) {
        throw DomainError("scale_demands: reference capacity must be positive");
    }
    double raw_total = 0.0;
    for (const Flow& f : flows) raw_total += f.demand_mbps;
    if (raw_total <= 0.0) {
        throw DomainError("scale_demands: total raw demand is zero");
    }
    const double factor = target_load * reference_capacity / raw_total;
    for (Flow& f : flows) f.demand_mbps *= factor;
}

}  // namespace hydra
