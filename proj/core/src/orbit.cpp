#include "hydra/orbit.hpp"

#include <cmath>

#include "hydra/errors.hpp"

namespace hydra {

using namespace constants;

double semi_major_axis_from_mean_motion(double mean_motion_rev_day) {
    if (mean_motion_rev_day <= 0.0) {
        throw DomainError("mean motion must be positive");
    }
    const double n = mean_motion_rev_day * kTwoPi / 86400.0;  // rad/s
    return std::cbrt(kMuEarth / (n * n));
}

double mean_motion_from_semi_major_axis(double a_km) {
    if (a_km <= 0.0) {
        throw DomainError("semi-major axis must be positive");
    }
    const double n = std::sqrt(kMuEarth / (a_km * a_km * a_km));  // rad/s
    return n * 86400.0 / kTwoPi;
}

namespace {

// Orbital-plane basis from RAAN and inclination: P points at the ascending
// node, Q is 90 deg ahead in the direction of motion.
void plane_basis(double raan_rad, double inc_rad, Vec3& p, Vec3& q) {
    const double cr = std::cos(raan_rad), sr = std::sin(raan_rad);
    const double ci = std::cos(inc_rad), si = std::sin(inc_rad);
    p = Vec3{cr, sr, 0.0};
    q = Vec3{-sr * ci, cr * ci, si};
}

double kepler_solve(double mean_anomaly_rad, double e) {
    double m = std::fmod(mean_anomaly_rad, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    double ecc_anom = e < 0.8 ? m : kPi;
    for (int i = 0; i < 30; ++i) {
        const double f = ecc_anom - e * std::sin(ecc_anom) - m;
        const double fp = 1.0 - e * std::cos(ecc_anom);
        const double step = f / fp;
        ecc_anom -= step;
        if (std::fabs(step) < 1e-13) break;
    }
    return ecc_anom;
}

}  // namespace

TemePosition propagate_circular(const MeanElements& el, const EpochTime& t) {
    if (el.eccentricity != 0.0) {
        throw UnsupportedInputError("propagate_circular requires eccentricity 0");
    }
    const double a = el.semi_major_axis_km;
    const double n = std::sqrt(kMuEarth / (a * a * a));  // rad/s
    const double dt = t.seconds_since(el.epoch);
    const double u = (el.arg_perigee_deg + el.mean_anomaly_deg) * kDegToRad + n * dt;
    Vec3 p, q;
    plane_basis(el.raan_deg * kDegToRad, el.inclination_deg * kDegToRad, p, q);
    return TemePosition{a * std::cos(u) * p + a * std::sin(u) * q};
}

double j2_raan_rate_deg_per_day(const MeanElements& el, double j2) {
    const double a = el.semi_major_axis_km;
    const double e = el.eccentricity;
    const double p_slr = a * (1.0 - e * e);
    const double n = std::sqrt(kMuEarth / (a * a * a));  // rad/s
    const double k = n * j2 * (kEarthRadiusKm / p_slr) * (kEarthRadiusKm / p_slr);
    const double rate = -1.5 * k * std::cos(el.inclination_deg * kDegToRad);  // rad/s
    return rate * 86400.0 * kRadToDeg;
}

TemePosition propagate_j2(const MeanElements& el, const EpochTime& t, double j2) {
    const double dt = t.seconds_since(el.epoch);
    if (std::fabs(dt) >= 10.0 * 86400.0) {
        throw StaleEpochError("propagate_j2: elements stale by " +
                              std::to_string(dt / 86400.0) + " days (limit 10)");
    }
    const double a = el.semi_major_axis_km;
    const double e = el.eccentricity;
    const double inc = el.inclination_deg * kDegToRad;
    const double p_slr = a * (1.0 - e * e);
    const double n = std::sqrt(kMuEarth / (a * a * a));  // rad/s

    const double k = n * j2 * (kEarthRadiusKm / p_slr) * (kEarthRadiusKm / p_slr);
    const double ci = std::cos(inc);
    const double raan_dot = -1.5 * k * ci;
    const double argp_dot = 0.75 * k * (5.0 * ci * ci - 1.0);
    const double m_dot = n + 0.75 * k * std::sqrt(1.0 - e * e) * (3.0 * ci * ci - 1.0);

    const double raan = el.raan_deg * kDegToRad + raan_dot * dt;
    const double argp = el.arg_perigee_deg * kDegToRad + argp_dot * dt;
    const double mean_anom = el.mean_anomaly_deg * kDegToRad + m_dot * dt;

    const double ecc_anom = kepler_solve(mean_anom, e);
    const double cos_e = std::cos(ecc_anom), sin_e = std::sin(ecc_anom);
    const double r = a * (1.0 - e * cos_e);
    const double true_anom = std::atan2(std::sqrt(1.0 - e * e) * sin_e, cos_e - e);

    const double u = argp + true_anom;
    Vec3 p, q;
    plane_basis(raan, inc, p, q);
    return TemePosition{r * std::cos(u) * p + r * std::sin(u) * q};
}

}  // namespace hydra
