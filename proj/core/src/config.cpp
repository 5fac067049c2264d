#include "hydra/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hydra/errors.hpp"
#include "hydra/time.hpp"

namespace hydra {

SimConfig::SimConfig() {
    for (int i = 1; i <= 100; ++i) attack_fractions.push_back(i * 0.0002);
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x)) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

// Comma lists; integer lists additionally accept "a..b" ranges.
std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const std::string& item : split_list(v)) out.push_back(to_double(key, item));
    return out;
}

std::vector<std::uint64_t> to_seed_list(const std::string& key, const std::string& v) {
    std::vector<std::uint64_t> out;
    for (const std::string& item : split_list(v)) {
        const auto dots = item.find("..");
        if (dots != std::string::npos) {
            const long long lo = to_int(key, item.substr(0, dots));
            const long long hi = to_int(key, item.substr(dots + 2));
            if (lo < 0 || hi < lo) throw ConfigError(key + ": bad range '" + item + "'");
            for (long long s = lo; s <= hi; ++s) out.push_back(static_cast<std::uint64_t>(s));
        } else {
            const long long s = to_int(key, item);
            if (s < 0) throw ConfigError(key + ": seeds must be non-negative");
            out.push_back(static_cast<std::uint64_t>(s));
        }
    }
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
        if (i) out += ",";
        out += buf;
    }
    return out;
}

std::string join_seeds(const std::vector<std::uint64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_strings(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i];
    }
    return out;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            }
            if (!kv.emplace(key, value).second) {
                throw ConfigError("duplicate config key '" + key + "'");
            }
        }
    }

    SimConfig cfg;
    std::set<std::string> unknown;
    for (const auto& [k, v] : kv) unknown.insert(k);
    auto take = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        unknown.erase(key);
        return &it->second;
    };

    if (auto* v = take("constellation.source")) cfg.source = *v;
    if (auto* v = take("constellation.tle_path")) cfg.tle_path = *v;
    if (auto* v = take("constellation.tle_strict")) cfg.tle_strict = to_bool("constellation.tle_strict", *v);
    if (auto* v = take("constellation.walker.inclination")) cfg.walker.inclination_deg = to_double("constellation.walker.inclination", *v);
    if (auto* v = take("constellation.walker.total")) cfg.walker.total_sats = static_cast<int>(to_int("constellation.walker.total", *v));
    if (auto* v = take("constellation.walker.planes")) cfg.walker.planes = static_cast<int>(to_int("constellation.walker.planes", *v));
    if (auto* v = take("constellation.walker.phasing")) cfg.walker.phasing = static_cast<int>(to_int("constellation.walker.phasing", *v));
    if (auto* v = take("constellation.walker.altitude_km")) cfg.walker.altitude_km = to_double("constellation.walker.altitude_km", *v);
    if (auto* v = take("constellation.propagator")) cfg.propagator = *v;

    if (auto* v = take("sim.start_utc")) cfg.start_utc = *v;
    if (auto* v = take("sim.horizon_minutes")) cfg.horizon_minutes = to_double("sim.horizon_minutes", *v);
    if (auto* v = take("sim.step_minutes")) cfg.step_minutes = to_double("sim.step_minutes", *v);

    if (auto* v = take("topology.isl_max_km")) cfg.topo.isl_max_km = to_double("topology.isl_max_km", *v);
    if (auto* v = take("topology.isl_k_max")) cfg.topo.isl_k_max = static_cast<int>(to_int("topology.isl_k_max", *v));
    if (auto* v = take("topology.min_elevation_deg")) cfg.topo.min_elevation_deg = to_double("topology.min_elevation_deg", *v);
    if (auto* v = take("topology.beams_per_sat")) cfg.topo.beams_per_sat = static_cast<int>(to_int("topology.beams_per_sat", *v));
    if (auto* v = take("topology.user_top_k")) cfg.topo.user_top_k = static_cast<int>(to_int("topology.user_top_k", *v));
    if (auto* v = take("topology.gateway_top_k")) cfg.topo.gateway_top_k = static_cast<int>(to_int("topology.gateway_top_k", *v));
    if (auto* v = take("topology.expand_hops")) cfg.topo.expand_hops = static_cast<int>(to_int("topology.expand_hops", *v));
    if (auto* v = take("topology.grazing_margin_km")) cfg.topo.grazing_margin_km = to_double("topology.grazing_margin_km", *v);
    if (auto* v = take("topology.ground_max_km")) cfg.topo.ground_max_km = to_double("topology.ground_max_km", *v);

    if (auto* v = take("capacity.user_beam_mbps")) cfg.caps.user_beam_mbps = to_double("capacity.user_beam_mbps", *v);
    if (auto* v = take("capacity.feeder_beam_mbps")) cfg.caps.feeder_beam_mbps = to_double("capacity.feeder_beam_mbps", *v);
    if (auto* v = take("capacity.gateway_mbps")) cfg.caps.gateway_mbps = to_double("capacity.gateway_mbps", *v);
    if (auto* v = take("capacity.sat_hardware_mbps")) cfg.caps.sat_hardware_mbps = to_double("capacity.sat_hardware_mbps", *v);
    if (auto* v = take("capacity.isl_edge_mbps")) cfg.caps.isl_edge_mbps = to_double("capacity.isl_edge_mbps", *v);
    if (auto* v = take("capacity.feeder_edge_mbps")) cfg.caps.feeder_edge_mbps = to_double("capacity.feeder_edge_mbps", *v);
    if (auto* v = take("capacity.access_edge_mbps")) cfg.caps.access_edge_mbps = to_double("capacity.access_edge_mbps", *v);

    if (auto* v = take("ground.city_table")) cfg.city_table_path = *v;
    if (auto* v = take("ground.users_total")) cfg.users_total = static_cast<int>(to_int("ground.users_total", *v));
    if (auto* v = take("ground.user_radius_km")) cfg.user_radius_km = to_double("ground.user_radius_km", *v);
    if (auto* v = take("ground.placement_seed")) cfg.placement_seed = static_cast<std::uint64_t>(to_int("ground.placement_seed", *v));

    if (auto* v = take("traffic.target_load")) cfg.demand.target_load = to_double("traffic.target_load", *v);
    if (auto* v = take("traffic.sigma_hours")) cfg.demand.sigma_hours = to_double("traffic.sigma_hours", *v);
    if (auto* v = take("traffic.floor")) cfg.demand.floor = to_double("traffic.floor", *v);
    if (auto* v = take("traffic.seed")) cfg.traffic_seed = static_cast<std::uint64_t>(to_int("traffic.seed", *v));

    if (auto* v = take("routing.delta_per_ms")) cfg.delta_per_ms = to_double("routing.delta_per_ms", *v);
    if (auto* v = take("cascade.max_iter")) cfg.max_iter = static_cast<int>(to_int("cascade.max_iter", *v));

    if (auto* v = take("analytics.trial_seeds")) cfg.trial_seeds = to_seed_list("analytics.trial_seeds", *v);
    if (auto* v = take("analytics.black_swan_degree_pct")) cfg.black_swan_degree_pct = to_double("analytics.black_swan_degree_pct", *v);
    if (auto* v = take("analytics.black_swan_hbc_pct")) cfg.black_swan_hbc_pct = to_double("analytics.black_swan_hbc_pct", *v);
    if (auto* v = take("analytics.top_n")) cfg.top_n = static_cast<int>(to_int("analytics.top_n", *v));

    if (auto* v = take("sweep.alpha_grid")) cfg.alpha_grid = to_double_list("sweep.alpha_grid", *v);
    if (auto* v = take("sweep.attack_fractions")) cfg.attack_fractions = to_double_list("sweep.attack_fractions", *v);
    if (auto* v = take("sweep.seeds")) cfg.seeds = to_seed_list("sweep.seeds", *v);
    if (auto* v = take("sweep.metrics")) cfg.metrics = split_list(*v);
    if (auto* v = take("sweep.times_minutes")) cfg.sweep_times_minutes = to_double_list("sweep.times_minutes", *v);

    if (auto* v = take("output.per_step_node_metrics")) cfg.per_step_node_metrics = to_bool("output.per_step_node_metrics", *v);

    if (!unknown.empty()) {
        throw ConfigError("unknown config key '" + *unknown.begin() + "'");
    }
    validate_config(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config file not found: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const SimConfig& cfg) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(cfg.source == "walker" || cfg.source == "tle",
            "constellation.source: must be walker or tle");
    require(cfg.propagator == "auto" || cfg.propagator == "two_body" || cfg.propagator == "j2",
            "constellation.propagator: must be auto, two_body or j2");
    if (cfg.source == "walker") {
        require(cfg.walker.total_sats > 0, "constellation.walker.total: must be positive");
        require(cfg.walker.planes > 0 && cfg.walker.total_sats % cfg.walker.planes == 0,
                "constellation.walker.planes: must divide total");
        require(cfg.walker.phasing >= 0 && cfg.walker.phasing < cfg.walker.total_sats,
                "constellation.walker.phasing: must lie in [0, total)");
        require(cfg.walker.altitude_km > 0.0, "constellation.walker.altitude_km: must be positive");
    }
    require(EpochTime::parse_iso8601(cfg.start_utc).has_value(),
            "sim.start_utc: not an ISO-8601 UTC timestamp");
    require(cfg.horizon_minutes >= 0.0, "sim.horizon_minutes: must be non-negative");
    require(cfg.step_minutes > 0.0, "sim.step_minutes: must be positive");

    require(cfg.topo.isl_max_km > 0.0, "topology.isl_max_km: must be positive");
    require(cfg.topo.isl_k_max >= 1, "topology.isl_k_max: must be at least 1");
    require(cfg.topo.min_elevation_deg >= 0.0 && cfg.topo.min_elevation_deg < 90.0,
            "topology.min_elevation_deg: must lie in [0, 90)");
    require(cfg.topo.beams_per_sat >= 1, "topology.beams_per_sat: must be at least 1");
    require(cfg.topo.user_top_k >= 1, "topology.user_top_k: must be at least 1");
    require(cfg.topo.gateway_top_k >= 1, "topology.gateway_top_k: must be at least 1");
    require(cfg.topo.expand_hops >= 0, "topology.expand_hops: must be non-negative");
    require(cfg.topo.grazing_margin_km >= 0.0, "topology.grazing_margin_km: must be non-negative");
    require(cfg.topo.ground_max_km >= 0.0, "topology.ground_max_km: must be non-negative");

    require(cfg.caps.user_beam_mbps > 0.0, "capacity.user_beam_mbps: must be positive");
    require(cfg.caps.feeder_beam_mbps > 0.0, "capacity.feeder_beam_mbps: must be positive");
    require(cfg.caps.gateway_mbps > 0.0, "capacity.gateway_mbps: must be positive");
    require(cfg.caps.sat_hardware_mbps > 0.0, "capacity.sat_hardware_mbps: must be positive");
    require(cfg.caps.isl_edge_mbps > 0.0, "capacity.isl_edge_mbps: must be positive");
    require(cfg.caps.feeder_edge_mbps > 0.0, "capacity.feeder_edge_mbps: must be positive");
    require(cfg.caps.access_edge_mbps > 0.0, "capacity.access_edge_mbps: must be positive");

    require(cfg.users_total >= 0, "ground.users_total: must be non-negative");
    require(cfg.user_radius_km >= 0.0, "ground.user_radius_km: must be non-negative");

    require(cfg.demand.target_load > 0.0 && cfg.demand.target_load <= 2.0,
            "traffic.target_load: must lie in (0, 2]");
    require(cfg.demand.sigma_hours > 0.0, "traffic.sigma_hours: must be positive");
    require(cfg.demand.floor >= 0.0 && cfg.demand.floor < 1.0,
            "traffic.floor: must lie in [0, 1)");

    require(cfg.delta_per_ms >= 0.0, "routing.delta_per_ms: must be non-negative");
    require(cfg.max_iter >= 1, "cascade.max_iter: must be at least 1");

    require(cfg.black_swan_degree_pct > 0.0 && cfg.black_swan_degree_pct <= 100.0,
            "analytics.black_swan_degree_pct: must lie in (0, 100]");
    require(cfg.black_swan_hbc_pct > 0.0 && cfg.black_swan_hbc_pct <= 100.0,
            "analytics.black_swan_hbc_pct: must lie in (0, 100]");
    require(cfg.top_n >= 1, "analytics.top_n: must be at least 1");

    for (double a : cfg.alpha_grid) {
        require(a >= 0.0 && a <= 1.0, "sweep.alpha_grid: values must lie in [0, 1]");
    }
    require(!cfg.alpha_grid.empty(), "sweep.alpha_grid: must not be empty");
    require(!cfg.attack_fractions.empty(), "sweep.attack_fractions: must not be empty");
    for (std::size_t i = 0; i < cfg.attack_fractions.size(); ++i) {
        const double f = cfg.attack_fractions[i];
        require(f > 0.0 && f <= 0.02, "sweep.attack_fractions: values must lie in (0, 0.02]");
        if (i > 0) {
            require(cfg.attack_fractions[i - 1] < f,
                    "sweep.attack_fractions: values must be strictly ascending");
        }
    }
    require(!cfg.seeds.empty(), "sweep.seeds: must not be empty");
    require(!cfg.metrics.empty(), "sweep.metrics: must not be empty");
    for (const std::string& m : cfg.metrics) {
        require(m == "hbc" || m == "degree" || m == "betweenness" || m == "pagerank" ||
                m == "random",
                "sweep.metrics: unknown metric '" + m + "'");
    }
    require(!cfg.sweep_times_minutes.empty(), "sweep.times_minutes: must not be empty");
    for (double t : cfg.sweep_times_minutes) {
        require(t >= 0.0, "sweep.times_minutes: must be non-negative");
    }

    // HBC ranking must never be trained on the seeds it is evaluated with.
    for (std::uint64_t s : cfg.seeds) {
        for (std::uint64_t t : cfg.trial_seeds) {
            require(s != t, "sweep.seeds: seed " + std::to_string(s) +
                            " also appears in analytics.trial_seeds");
        }
    }
}

std::string dump_config(const SimConfig& cfg) {
    std::map<std::string, std::string> kv;
    char buf[64];
    auto put_d = [&](const std::string& k, double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        kv[k] = buf;
    };
    auto put_i = [&](const std::string& k, long long v) { kv[k] = std::to_string(v); };
    auto put_b = [&](const std::string& k, bool v) { kv[k] = v ? "true" : "false"; };
    auto put_s = [&](const std::string& k, const std::string& v) { kv[k] = v; };

    put_s("constellation.source", cfg.source);
    put_s("constellation.tle_path", cfg.tle_path);
    put_b("constellation.tle_strict", cfg.tle_strict);
    put_d("constellation.walker.inclination", cfg.walker.inclination_deg);
    put_i("constellation.walker.total", cfg.walker.total_sats);
    put_i("constellation.walker.planes", cfg.walker.planes);
    put_i("constellation.walker.phasing", cfg.walker.phasing);
    put_d("constellation.walker.altitude_km", cfg.walker.altitude_km);
    put_s("constellation.propagator", cfg.propagator);
    put_s("sim.start_utc", cfg.start_utc);
    put_d("sim.horizon_minutes", cfg.horizon_minutes);
    put_d("sim.step_minutes", cfg.step_minutes);
    put_d("topology.isl_max_km", cfg.topo.isl_max_km);
    put_i("topology.isl_k_max", cfg.topo.isl_k_max);
    put_d("topology.min_elevation_deg", cfg.topo.min_elevation_deg);
    put_i("topology.beams_per_sat", cfg.topo.beams_per_sat);
    put_i("topology.user_top_k", cfg.topo.user_top_k);
    put_i("topology.gateway_top_k", cfg.topo.gateway_top_k);
    put_i("topology.expand_hops", cfg.topo.expand_hops);
    put_d("topology.grazing_margin_km", cfg.topo.grazing_margin_km);
    put_d("topology.ground_max_km", cfg.topo.ground_max_km);
    put_d("capacity.user_beam_mbps", cfg.caps.user_beam_mbps);
    put_d("capacity.feeder_beam_mbps", cfg.caps.feeder_beam_mbps);
    put_d("capacity.gateway_mbps", cfg.caps.gateway_mbps);
    put_d("capacity.sat_hardware_mbps", cfg.caps.sat_hardware_mbps);
    put_d("capacity.isl_edge_mbps", cfg.caps.isl_edge_mbps);
    put_d("capacity.feeder_edge_mbps", cfg.caps.feeder_edge_mbps);
    put_d("capacity.access_edge_mbps", cfg.caps.access_edge_mbps);
    put_s("ground.city_table", cfg.city_table_path);
    put_i("ground.users_total", cfg.users_total);
    put_d("ground.user_radius_km", cfg.user_radius_km);
    put_i("ground.placement_seed", static_cast<long long>(cfg.placement_seed));
    put_d("traffic.target_load", cfg.demand.target_load);
    put_d("traffic.sigma_hours", cfg.demand.sigma_hours);
    put_d("traffic.floor", cfg.demand.floor);
    put_i("traffic.seed", static_cast<long long>(cfg.traffic_seed));
    put_d("routing.delta_per_ms", cfg.delta_per_ms);
    put_i("cascade.max_iter", cfg.max_iter);
    kv["analytics.trial_seeds"] = join_seeds(cfg.trial_seeds);
    put_d("analytics.black_swan_degree_pct", cfg.black_swan_degree_pct);
    put_d("analytics.black_swan_hbc_pct", cfg.black_swan_hbc_pct);
    put_i("analytics.top_n", cfg.top_n);
    kv["sweep.alpha_grid"] = join_doubles(cfg.alpha_grid);
    kv["sweep.attack_fractions"] = join_doubles(cfg.attack_fractions);
    kv["sweep.seeds"] = join_seeds(cfg.seeds);
    kv["sweep.metrics"] = join_strings(cfg.metrics);
    kv["sweep.times_minutes"] = join_doubles(cfg.sweep_times_minutes);
    put_b("output.per_step_node_metrics", cfg.per_step_node_metrics);

    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

}  // namespace hydra
