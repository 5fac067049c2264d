#ifndef HYDRA_GEO_HPP_
#define HYDRA_GEO_HPP_

#include "hydra/time.hpp"
#include "hydra/vec3.hpp"

namespace hydra {

namespace constants {
constexpr double kEarthRadiusKm = 6378.137;          // equatorial, WGS-84
constexpr double kMuEarth = 398600.4418;             // km^3/s^2
constexpr double kJ2 = 1.08262668e-3;
constexpr double kWgs84Flattening = 1.0 / 298.257223563;
constexpr double kSpeedOfLightKmPerS = 299792.458;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;
}  // namespace constants

/// Position in the true-equator mean-equinox inertial frame, km.
struct TemePosition {
    Vec3 v;
};

/// Position in the Earth-centered Earth-fixed rotating frame, km.
struct EcefPosition {
    Vec3 v;
};

/// lat/lon in degrees (lon normalized to [-180, 180)), altitude in km.
struct GeodeticPosition {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_km = 0.0;
};

/// Greenwich Mean Sidereal Time (IAU 1982, UT1 taken equal to UTC),
/// radians in [0, 2pi). Throws DomainError outside years 1990-2060.
double gmst(const EpochTime& t);

/// Rotate an inertial position into the Earth-fixed frame at time t.
EcefPosition teme_to_ecef(const TemePosition& p, const EpochTime& t);

/// WGS-84 geodetic to ECEF.
EcefPosition geodetic_to_ecef(const GeodeticPosition& g);

/// ECEF to WGS-84 geodetic (iterative; <1 m round-trip below 2000 km).
GeodeticPosition ecef_to_geodetic(const EcefPosition& p);

/// Elevation of the target above the local horizontal plane of the ground
/// point, degrees in [-90, 90]. The local vertical is the geocentric radial
/// direction at the ground point (spherical Earth convention).
double elevation_angle(const GeodeticPosition& ground, const EcefPosition& target);
double elevation_angle(const EcefPosition& ground, const EcefPosition& target);

/// True when the segment a-b clears the sphere of radius
/// kEarthRadiusKm + grazing_margin_km. Closest approaches at the segment
/// endpoints do not occlude (the endpoints are node positions).
bool line_of_sight(const EcefPosition& a, const EcefPosition& b,
                   double grazing_margin_km = 80.0);

/// One-way propagation delay in milliseconds. Negative distance throws.
double propagation_delay_ms(double distance_km);

/// Initial great-circle bearing from `from` to `to`, degrees in [0, 360).
double bearing_deg(double from_lat_deg, double from_lon_deg,
                   double to_lat_deg, double to_lon_deg);

/// Point reached from (lat, lon) travelling `distance_km` along `bearing_deg`
/// on a sphere of Earth radius. Used for ground-node placement.
GeodeticPosition destination_point(double lat_deg, double lon_deg,
                                   double bearing_deg, double distance_km);

}  // namespace hydra

#endif  // HYDRA_GEO_HPP_
