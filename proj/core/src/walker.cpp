#include "hydra/walker.hpp"

#include <cmath>

#include "hydra/errors.hpp"

namespace hydra {

std::vector<MeanElements> generate_walker(const WalkerParams& p, const EpochTime& epoch) {
    if (p.total_sats <= 0 || p.planes <= 0) {
        throw ConfigError("walker: total and planes must be positive");
    }
    if (p.total_sats % p.planes != 0) {
        throw ConfigError("walker: planes (" + std::to_string(p.planes) +
                          ") must divide total satellites (" + std::to_string(p.total_sats) + ")");
    }
    if (p.phasing < 0 || p.phasing >= p.total_sats) {
        throw ConfigError("walker: phasing must lie in [0, total)");
    }
    if (p.altitude_km <= 0.0) {
        throw ConfigError("walker: altitude must be positive");
    }

    const int per_plane = p.total_sats / p.planes;
    const double a = constants::kEarthRadiusKm + p.altitude_km;
    const double mm = mean_motion_from_semi_major_axis(a);
    const double raan_step = 360.0 / p.planes;
    const double slot_step = 360.0 * p.planes / p.total_sats;  // = 360 / per_plane
    const double phase_step = 360.0 * p.phasing / p.total_sats;

    std::vector<MeanElements> out;
    out.reserve(static_cast<size_t>(p.total_sats));
    for (int k = 0; k < p.planes; ++k) {
        for (int m = 0; m < per_plane; ++m) {
            MeanElements el;
            el.semi_major_axis_km = a;
            el.eccentricity = 0.0;
            el.inclination_deg = p.inclination_deg;
            el.raan_deg = std::fmod(k * raan_step, 360.0);
            el.arg_perigee_deg = 0.0;
            el.mean_anomaly_deg = std::fmod(m * slot_step + k * phase_step, 360.0);
            el.mean_motion_rev_day = mm;
            el.bstar = 0.0;
            el.epoch = epoch;
            out.push_back(el);
        }
    }
    return out;
}

std::vector<EcefPosition> constellation_positions(const std::vector<MeanElements>& elements,
                                                  const EpochTime& t,
                                                  PropagationMode mode) {
    const double theta = gmst(t);
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<EcefPosition> out;
    out.reserve(elements.size());
    for (const MeanElements& el : elements) {
        const TemePosition p = mode == PropagationMode::TwoBody
                                   ? propagate_circular(el, t)
                                   : propagate_j2(el, t);
        out.push_back(EcefPosition{{c * p.v.x + s * p.v.y,
                                    -s * p.v.x + c * p.v.y,
                                    p.v.z}});
    }
    return out;
}

}  // namespace hydra
