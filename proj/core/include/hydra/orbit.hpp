#ifndef HYDRA_ORBIT_HPP_
#define HYDRA_ORBIT_HPP_

#include "hydra/geo.hpp"
#include "hydra/time.hpp"

namespace hydra {

/// Mean Keplerian element set. Angles in degrees, mean_motion in rev/day.
/// semi_major_axis and mean_motion must agree through mu to 1e-6 relative.
struct MeanElements {
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_day = 0.0;
    double bstar = 0.0;
    EpochTime epoch;

    /// Orbital period from the stored mean motion, seconds.
    double period_s() const { return 86400.0 / mean_motion_rev_day; }
};

/// Semi-major axis consistent with a mean motion in rev/day.
double semi_major_axis_from_mean_motion(double mean_motion_rev_day);
/// Mean motion in rev/day consistent with a semi-major axis in km.
double mean_motion_from_semi_major_axis(double semi_major_axis_km);

/// Two-body propagation of an exactly circular orbit. The argument of
/// latitude advances as u = argp + M0 + n*(t - epoch). Throws
/// UnsupportedInputError for nonzero eccentricity.
TemePosition propagate_circular(const MeanElements& el, const EpochTime& t);

/// Keplerian propagation with secular J2 rates applied to RAAN, argument of
/// perigee and mean anomaly. Throws StaleEpochError when |t - epoch| is
/// 10 days or more. `j2` exists so tests can zero the perturbation.
TemePosition propagate_j2(const MeanElements& el, const EpochTime& t,
                          double j2 = constants::kJ2);

/// Secular J2 nodal regression rate, degrees per day.
double j2_raan_rate_deg_per_day(const MeanElements& el, double j2 = constants::kJ2);

}  // namespace hydra

#endif  // HYDRA_ORBIT_HPP_
