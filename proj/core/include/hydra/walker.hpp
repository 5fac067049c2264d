#ifndef HYDRA_WALKER_HPP_
#define HYDRA_WALKER_HPP_

#include <vector>

#include "hydra/orbit.hpp"

namespace hydra {

/// Walker Delta constellation i:T/P/F at a common altitude.
struct WalkerParams {
    double inclination_deg = 53.0;
    int total_sats = 0;      // T
    int planes = 0;          // P, must divide T
    int phasing = 0;         // F in [0, T)
    double altitude_km = 550.0;
};

/// Generate the T circular element sets: plane k has RAAN k*360/P, slot m in
/// plane k has mean anomaly m*360*P/T + k*F*360/T (degrees, mod 360).
std::vector<MeanElements> generate_walker(const WalkerParams& p, const EpochTime& epoch);

enum class PropagationMode { TwoBody, J2 };

/// Propagate every element set to t and rotate into ECEF.
std::vector<EcefPosition> constellation_positions(const std::vector<MeanElements>& elements,
                                                  const EpochTime& t,
                                                  PropagationMode mode);

}  // namespace hydra

#endif  // HYDRA_WALKER_HPP_
