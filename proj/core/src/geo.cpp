#include "hydra/geo.hpp"

#include <cmath>

#include "hydra/errors.hpp"

namespace hydra {

using namespace constants;

double gmst(const EpochTime& t) {
    const int year = t.utc_year();
    if (year < 1990 || year > 2060) {
        throw DomainError("gmst: epoch year " + std::to_string(year) +
                          " outside supported range 1990-2060");
    }
    // IAU 1982 polynomial, seconds of sidereal time; UT1 ~ UTC.
    const double tu = t.days_since_j2000() / 36525.0;
    double theta_s = 67310.54841 +
                     (876600.0 * 3600.0 + 8640184.812866) * tu +
                     0.093104 * tu * tu -
                     6.2e-6 * tu * tu * tu;
    theta_s = std::fmod(theta_s, 86400.0);
    if (theta_s < 0.0) theta_s += 86400.0;
    return theta_s * kTwoPi / 86400.0;
}

EcefPosition teme_to_ecef(const TemePosition& p, const EpochTime& t) {
    const double theta = gmst(t);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return EcefPosition{{c * p.v.x + s * p.v.y,
                         -s * p.v.x + c * p.v.y,
                         p.v.z}};
}

EcefPosition geodetic_to_ecef(const GeodeticPosition& g) {
    const double lat = g.lat_deg * kDegToRad;
    const double lon = g.lon_deg * kDegToRad;
    const double e2 = kWgs84Flattening * (2.0 - kWgs84Flattening);
    const double slat = std::sin(lat);
    const double clat = std::cos(lat);
    const double n = kEarthRadiusKm / std::sqrt(1.0 - e2 * slat * slat);
    return EcefPosition{{(n + g.alt_km) * clat * std::cos(lon),
                         (n + g.alt_km) * clat * std::sin(lon),
                         (n * (1.0 - e2) + g.alt_km) * slat}};
}

GeodeticPosition ecef_to_geodetic(const EcefPosition& p) {
    const double e2 = kWgs84Flattening * (2.0 - kWgs84Flattening);
    const double rho = std::hypot(p.v.x, p.v.y);
    double lat = std::atan2(p.v.z, rho * (1.0 - e2));
    double alt = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double slat = std::sin(lat);
        const double n = kEarthRadiusKm / std::sqrt(1.0 - e2 * slat * slat);
        alt = rho / std::cos(lat) - n;
        lat = std::atan2(p.v.z, rho * (1.0 - e2 * n / (n + alt)));
    }
    double lon = std::atan2(p.v.y, p.v.x) * kRadToDeg;
    if (lon >= 180.0) lon -= 360.0;
    if (lon < -180.0) lon += 360.0;
    return GeodeticPosition{lat * kRadToDeg, lon, alt};
}

double elevation_angle(const EcefPosition& ground, const EcefPosition& target) {
    const Vec3 up = ground.v.normalized();
    const Vec3 los = target.v - ground.v;
    const double n = los.norm();
    if (n == 0.0) return 90.0;
    double s = up.dot(los) / n;
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    return std::asin(s) * kRadToDeg;
}

double elevation_angle(const GeodeticPosition& ground, const EcefPosition& target) {
    return elevation_angle(geodetic_to_ecef(ground), target);
}

bool line_of_sight(const EcefPosition& a, const EcefPosition& b,
                   double grazing_margin_km) {
    const Vec3 d = b.v - a.v;
    const double dd = d.norm2();
    if (dd == 0.0) return true;
    const double tau = -a.v.dot(d) / dd;
    if (tau <= 0.0 || tau >= 1.0) return true;
    const double min_dist = (a.v + tau * d).norm();
    return min_dist >= kEarthRadiusKm + grazing_margin_km;
}

double propagation_delay_ms(double distance_km) {
    if (distance_km < 0.0 || !std::isfinite(distance_km)) {
        throw DomainError("propagation_delay: negative or non-finite distance");
    }
    return distance_km / kSpeedOfLightKmPerS * 1000.0;
}

double bearing_deg(double from_lat_deg, double from_lon_deg,
                   double to_lat_deg, double to_lon_deg) {
    const double lat1 = from_lat_deg * kDegToRad;
    const double lat2 = to_lat_deg * kDegToRad;
    const double dlon = (to_lon_deg - from_lon_deg) * kDegToRad;
    const double y = std::sin(dlon) * std::cos(lat2);
    const double x = std::cos(lat1) * std::sin(lat2) -
                     std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
    double b = std::atan2(y, x) * kRadToDeg;
    if (b < 0.0) b += 360.0;
    if (b >= 360.0) b -= 360.0;
    return b;
}

GeodeticPosition destination_point(double lat_deg, double lon_deg,
                                   double bearing, double distance_km) {
    const double lat1 = lat_deg * kDegToRad;
    const double lon1 = lon_deg * kDegToRad;
    const double brg = bearing * kDegToRad;
    const double ang = distance_km / kEarthRadiusKm;
    const double lat2 = std::asin(std::sin(lat1) * std::cos(ang) +
                                  std::cos(lat1) * std::sin(ang) * std::cos(brg));
    const double lon2 = lon1 + std::atan2(std::sin(brg) * std::sin(ang) * std::cos(lat1),
                                          std::cos(ang) - std::sin(lat1) * std::sin(lat2));
    double lon_out = std::fmod(lon2 * kRadToDeg + 540.0, 360.0) - 180.0;
    return GeodeticPosition{lat2 * kRadToDeg, lon_out, 0.0};
}

}  // namespace hydra
