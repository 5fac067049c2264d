#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "hydra/config.hpp"
#include "hydra/errors.hpp"

using namespace hydra;

TEST_CASE("empty text yields the documented defaults") {
    const SimConfig cfg = parse_config("");
    CHECK(cfg.source == "walker");
    CHECK(cfg.walker.total_sats == 220);
    CHECK(cfg.walker.planes == 10);
    CHECK(cfg.topo.isl_max_km == 5000.0);
    CHECK(cfg.topo.isl_k_max == 4);
    CHECK(cfg.topo.min_elevation_deg == 25.0);
    CHECK(cfg.topo.beams_per_sat == 12);
    CHECK(cfg.topo.user_top_k == 3);
    CHECK(cfg.caps.isl_edge_mbps == 40000.0);
    CHECK(cfg.demand.target_load == 0.7);
    CHECK(cfg.max_iter == 50);
    CHECK(cfg.users_total == 800);
    CHECK(cfg.seeds.size() == 20);
    CHECK(cfg.attack_fractions.size() == 100);
    CHECK(cfg.attack_fractions.front() == doctest::Approx(0.0002));
    CHECK(cfg.attack_fractions.back() == doctest::Approx(0.02));
    CHECK(cfg.trial_seeds.size() == 5);
    CHECK(cfg.alpha_grid == std::vector<double>{0.6, 0.7, 0.8, 0.9, 1.0});
}

TEST_CASE("dump -> parse -> dump is a fixed point") {
    const SimConfig def = parse_config("");
    const std::string canon = dump_config(def);
    const SimConfig round = parse_config(canon);
    CHECK(dump_config(round) == canon);

    // Same for a customized config.
    SimConfig custom = def;
    custom.walker.total_sats = 1584;
    custom.walker.planes = 72;
    custom.walker.phasing = 39;
    custom.demand.target_load = 0.55;
    custom.alpha_grid = {0.7, 0.8};
    const std::string canon2 = dump_config(custom);
    CHECK(dump_config(parse_config(canon2)) == canon2);
}

TEST_CASE("range violations name the offending key") {
    CHECK_THROWS_WITH_AS(parse_config("sweep.alpha_grid = 0.5,1.5"),
                         doctest::Contains("sweep.alpha_grid"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("traffic.target_load = 0"),
                         doctest::Contains("traffic.target_load"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("traffic.floor = 1.0"),
                         doctest::Contains("traffic.floor"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("sweep.attack_fractions = 0.05"),
                         doctest::Contains("sweep.attack_fractions"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("sweep.attack_fractions = 0.002,0.001"),
                         doctest::Contains("ascending"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("cascade.max_iter = 0"),
                         doctest::Contains("cascade.max_iter"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("constellation.walker.planes = 7"),
                         doctest::Contains("planes"), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config("topology.unknown_knob = 3"),
                         doctest::Contains("unknown config key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("typo = 1"), doctest::Contains("typo"), ConfigError);
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config("traffic.seed = 1\ntraffic.seed = 2"),
                         doctest::Contains("duplicate"), ConfigError);
}

TEST_CASE("seed lists accept ranges and commas") {
    const SimConfig cfg = parse_config("sweep.seeds = 1..3,7\nanalytics.trial_seeds = 100");
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 7});
    CHECK(cfg.trial_seeds == std::vector<std::uint64_t>{100});
}

TEST_CASE("evaluation seeds must not leak into ranking seeds") {
    CHECK_THROWS_WITH_AS(parse_config("sweep.seeds = 1,2\nanalytics.trial_seeds = 2,3"),
                         doctest::Contains("also appears"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    const SimConfig cfg = parse_config(
        "# a comment\n"
        "\n"
        "traffic.seed = 9  # trailing comment\n");
    CHECK(cfg.traffic_seed == 9);
}

TEST_CASE("malformed lines are rejected") {
    CHECK_THROWS_AS(parse_config("not a key value line"), ConfigError);
    CHECK_THROWS_AS(parse_config("= 3"), ConfigError);
    CHECK_THROWS_AS(parse_config("traffic.seed = abc"), ConfigError);
}

TEST_CASE("missing config file is a configuration error") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/hydra.cfg"), ConfigError);
}

TEST_CASE("tle source requires a path") {
    CHECK_NOTHROW(parse_config("constellation.source = tle\nconstellation.tle_path = x.tle"));
    CHECK_THROWS_AS(parse_config("constellation.source = nonsense"), ConfigError);
}
