#ifndef HYDRA_GROUND_HPP_
#define HYDRA_GROUND_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hydra/geo.hpp"

namespace hydra {

/// One row of the city/gateway table.
struct CityRecord {
    std::string name;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double population_weight = 0.0;  // metro population, millions
    double adoption_beta = 0.0;      // regional adoption coefficient [0, 1]
    bool is_gateway = false;
};

/// A placed user terminal (modeling a user group).
struct GroundUser {
    std::string name;
    GeodeticPosition position;
    double pop_weight = 0.0;  // this user's share of its metro population
    double adoption_beta = 0.0;
    int city_index = 0;
};

struct GroundGateway {
    std::string name;
    GeodeticPosition position;
};

/// Parse the delimited city table: name, lat, lon, population_weight,
/// adoption_beta, is_gateway. Comma or whitespace separated; '#' comments.
std::vector<CityRecord> parse_city_table(const std::string& text);

/// Built-in default: 8 metros plus 10 gateway sites.
const std::vector<CityRecord>& default_city_table();

struct GroundModel {
    std::vector<GroundUser> users;
    std::vector<GroundGateway> gateways;
};

/// Allocate `total_users` across the table's metro rows proportionally to
/// population (largest-remainder, at least one per metro), place each
/// uniformly within `radius_km` of its city center, and collect gateways.
/// Deterministic in (table, total_users, radius_km, seed).
GroundModel build_ground_model(const std::vector<CityRecord>& table,
                               int total_users, double radius_km,
                               std::uint64_t seed);

}  // namespace hydra

#endif  // HYDRA_GROUND_HPP_
