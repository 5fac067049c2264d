#ifndef HYDRA_TRAFFIC_HPP_
#define HYDRA_TRAFFIC_HPP_

#include <cstdint>
#include <vector>

#include "hydra/snapshot.hpp"

namespace hydra {

/// A user-to-gateway demand; the unit of routing and load.
struct Flow {
    NodeId user = kInvalidNode;
    NodeId gateway = kInvalidNode;
    double demand_mbps = 0.0;
};

struct DemandProfile {
    double target_load = 0.7;   // fraction of reference capacity, (0, 2]
    double sigma_hours = 3.0;   // diurnal peak width
    double floor = 0.1;         // off-peak fraction of the peak factor
};

/// Diurnal activity in (0, 1]: a Gaussian peak at 21:00 local solar time
/// with wrap-around at the day boundary and a configurable floor.
double diurnal_factor(double lon_deg, const EpochTime& t,
                      double sigma_hours = 3.0, double floor = 0.1);

/// Sum of user-beam capacities in the snapshot: the access-layer capacity
/// the offered load is scaled against.
double reference_capacity_mbps(const Snapshot& snapshot);

/// One flow per user: demand proportional to pop_weight * beta * diurnal,
/// destination gateway drawn uniformly (seeded), then globally scaled so the
/// total equals target_load * reference_capacity.
std::vector<Flow> generate_flows(const Snapshot& snapshot, const DemandProfile& profile,
                                 const EpochTime& t, std::uint64_t seed);

/// Scale all demands by one factor so they sum to target_load * reference.
void scale_demands(std::vector<Flow>& flows, double target_load,
                   double reference_capacity);

}  // namespace hydra

#endif  // HYDRA_TRAFFIC_HPP_
