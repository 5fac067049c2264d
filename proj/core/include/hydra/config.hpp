#ifndef HYDRA_CONFIG_HPP_
#define HYDRA_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hydra/topology.hpp"
#include "hydra/traffic.hpp"
#include "hydra/walker.hpp"

namespace hydra {

/// Full run configuration. File format: flat `key = value` lines with dotted
/// keys and '#' comments. Every field has a documented default; unknown keys
/// are rejected.
struct SimConfig {
    // constellation
    std::string source = "walker";  // walker | tle
    std::string tle_path;
    bool tle_strict = true;
    WalkerParams walker{53.0, 220, 10, 5, 550.0};
    std::string propagator = "auto";  // auto | two_body | j2

    // simulation window
    std::string start_utc = "2025-01-01T00:00:00Z";
    double horizon_minutes = 90.0;
    double step_minutes = 22.0;

    TopologyConfig topo;
    CapacityConfig caps;

    // ground segment
    std::string city_table_path;  // empty -> built-in table
    int users_total = 800;
    double user_radius_km = 50.0;
    std::uint64_t placement_seed = 4242;

    // traffic
    DemandProfile demand;  // target_load 0.7, sigma 3h, floor 0.1
    std::uint64_t traffic_seed = 1;

    // routing / cascade
    double delta_per_ms = 1e-4;
    int max_iter = 50;

    // risk analytics; one CFR trial per (node, trial seed)
    std::vector<std::uint64_t> trial_seeds = {1001, 1002, 1003, 1004, 1005};
    double black_swan_degree_pct = 20.0;
    double black_swan_hbc_pct = 90.0;
    int top_n = 150;

    // attack sweep
    std::vector<double> alpha_grid = {0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> attack_fractions;        // default: 0.0002 .. 0.02 step 0.0002
    std::vector<std::uint64_t> seeds;            // evaluation seeds, default 1..20
    std::vector<std::string> metrics = {"hbc", "degree", "betweenness", "pagerank", "random"};
    std::vector<double> sweep_times_minutes = {0.0};

    // outputs
    bool per_step_node_metrics = true;

    SimConfig();
};

/// Parse + validate a config file. Missing path throws ConfigError; an empty
/// file yields the documented defaults.
SimConfig load_config(const std::string& path);

/// Parse + validate config text (the file-less entry point).
SimConfig parse_config(const std::string& text);

/// Range/consistency checks shared by all entry points; throws ConfigError
/// naming the offending key.
void validate_config(const SimConfig& cfg);

/// Canonical rendering: every key, sorted, with round-trippable values.
/// dump(parse(dump(x))) == dump(x).
std::string dump_config(const SimConfig& cfg);

}  // namespace hydra

#endif  // HYDRA_CONFIG_HPP_
