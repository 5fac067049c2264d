#include "hydra/ground.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hydra/errors.hpp"
#include "hydra/rng.hpp"

namespace hydra {

std::vector<CityRecord> parse_city_table(const std::string& text) {
    std::vector<CityRecord> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        CityRecord rec;
        int gw = 0;
        if (!(row >> rec.name)) continue;  // blank line
        if (!(row >> rec.lat_deg >> rec.lon_deg >> rec.population_weight >>
              rec.adoption_beta >> gw)) {
            throw InputError("city table line " + std::to_string(line_no) +
                             ": expected name lat lon pop beta is_gateway");
        }
        if (rec.lat_deg < -90.0 || rec.lat_deg > 90.0 ||
            rec.lon_deg < -180.0 || rec.lon_deg >= 360.0) {
            throw InputError("city table line " + std::to_string(line_no) +
                             ": coordinates out of range");
        }
        if (rec.lon_deg >= 180.0) rec.lon_deg -= 360.0;
        if (rec.adoption_beta < 0.0 || rec.adoption_beta > 1.0) {
            throw InputError("city table line " + std::to_string(line_no) +
                             ": adoption_beta outside [0, 1]");
        }
        rec.is_gateway = gw != 0;
        out.push_back(std::move(rec));
    }
    return out;
}

const std::vector<CityRecord>& default_city_table() {
    // Metro population weights are public round figures (millions); adoption
    // coefficients follow the NA=1.0 / EU+Oceania=0.8 / other=0.3 tiers.
    static const std::vector<CityRecord> table = {
        {"NewYork", 40.7128, -74.0060, 19.5, 1.0, false},
        {"LosAngeles", 34.0522, -118.2437, 13.2, 1.0, false},
        {"London", 51.5074, -0.1278, 14.8, 0.8, false},
        {"Paris", 48.8566, 2.3522, 11.2, 0.8, false},
        {"Sydney", -33.8688, 151.2093, 5.3, 0.8, false},
        {"Tokyo", 35.6762, 139.6503, 37.4, 0.3, false},
        {"SaoPaulo", -23.5505, -46.6333, 22.0, 0.3, false},
        {"Mumbai", 19.0760, 72.8777, 20.7, 0.3, false},
        // Teleport sites skew toward low latitudes, where 53-degree shells
        // are thinnest: desk-scale gateways typically see one satellite.
        {"GW-Dallas", 32.7767, -96.7970, 0.0, 0.0, true},
        {"GW-Madrid", 40.4168, -3.7038, 0.0, 0.0, true},
        {"GW-Sydney", -33.6000, 150.8000, 0.0, 0.0, true},
        {"GW-SaoPaulo", -23.2000, -46.9000, 0.0, 0.0, true},
        {"GW-Panama", 8.9824, -79.5199, 0.0, 0.0, true},
        {"GW-Lagos", 6.4550, 3.3841, 0.0, 0.0, true},
        {"GW-Singapore", 1.3521, 103.8198, 0.0, 0.0, true},
        {"GW-Manila", 14.5995, 120.9842, 0.0, 0.0, true},
        {"GW-Chennai", 13.0827, 80.2707, 0.0, 0.0, true},
        {"GW-Hawaii", 21.3069, -157.8583, 0.0, 0.0, true},
    };
    return table;
}

GroundModel build_ground_model(const std::vector<CityRecord>& table,
                               int total_users, double radius_km,
                               std::uint64_t seed) {
    GroundModel model;
    std::vector<int> metro_rows;
    double total_pop = 0.0;
    for (int i = 0; i < static_cast<int>(table.size()); ++i) {
        const CityRecord& rec = table[i];
        if (rec.is_gateway) {
            model.gateways.push_back({rec.name, {rec.lat_deg, rec.lon_deg, 0.0}});
        }
        if (rec.population_weight > 0.0) {
            metro_rows.push_back(i);
            total_pop += rec.population_weight;
        }
    }
    if (total_users <= 0) return model;
    if (metro_rows.empty() || total_pop <= 0.0) {
        throw ConfigError("ground model: no metro rows with positive population");
    }
    if (total_users < static_cast<int>(metro_rows.size())) {
        throw ConfigError("ground model: need at least one user per metro");
    }

    // Largest-remainder apportionment with a floor of 1 per metro.
    const int n_metro = static_cast<int>(metro_rows.size());
    std::vector<int> counts(n_metro, 1);
    int remaining = total_users - n_metro;
    std::vector<double> quota(n_metro);
    double quota_total = 0.0;
    for (int i = 0; i < n_metro; ++i) {
        quota[i] = table[metro_rows[i]].population_weight / total_pop * remaining;
        counts[i] += static_cast<int>(std::floor(quota[i]));
        quota_total += std::floor(quota[i]);
    }
    int leftovers = remaining - static_cast<int>(quota_total);
    std::vector<int> order(n_metro);
    for (int i = 0; i < n_metro; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ra = quota[a] - std::floor(quota[a]);
        const double rb = quota[b] - std::floor(quota[b]);
        if (ra != rb) return ra > rb;
        return a < b;
    });
    for (int i = 0; i < leftovers; ++i) counts[order[i % n_metro]] += 1;

    Rng rng(mix_seed(seed, 0x67726f756eull));  // placement stream
    for (int i = 0; i < n_metro; ++i) {
        const CityRecord& city = table[metro_rows[i]];
        // Each user models a user group of its metro: it carries the metro's
        // population weight, while the group count already scales with it.
        const double per_user_weight = city.population_weight;
        for (int u = 0; u < counts[i]; ++u) {
            // Uniform over the disc: r ~ radius*sqrt(U), bearing uniform.
            const double r = radius_km * std::sqrt(uniform01(rng));
            const double brg = 360.0 * uniform01(rng);
            GeodeticPosition pos = destination_point(city.lat_deg, city.lon_deg, brg, r);
            char name[64];
            std::snprintf(name, sizeof(name), "USER-%s-%03d", city.name.c_str(), u);
            model.users.push_back({name, pos, per_user_weight, city.adoption_beta, i});
        }
    }
    return model;
}

}  // namespace hydra
