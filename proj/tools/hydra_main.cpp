// hydra - cascading-failure risk analysis for LEO constellations.
//
// Subcommands mirror the pipeline stages: `snapshot` emits one topology,
// `metrics` a per-node risk table, `timeseries` the sampled horizon,
// `sweep` the attack-efficacy grid, `walker-gen` the generated element set,
// and `validate-tle` checks element files.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydra/cascade.hpp"
#include "hydra/csv.hpp"
#include "hydra/errors.hpp"
#include "hydra/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string time_iso;
    std::string seeds;
    bool strict_tle = false;
    bool lenient_tle = false;
    int max_iter = 0;
};

hydra::SimConfig resolve_config(const CommonOpts& opts) {
    hydra::SimConfig cfg = opts.config_path.empty() ? hydra::SimConfig()
                                                    : hydra::load_config(opts.config_path);
    if (opts.strict_tle) cfg.tle_strict = true;
    if (opts.lenient_tle) cfg.tle_strict = false;
    if (opts.max_iter > 0) cfg.max_iter = opts.max_iter;
    if (!opts.seeds.empty()) {
        hydra::SimConfig patched = hydra::parse_config("sweep.seeds = " + opts.seeds);
        cfg.seeds = patched.seeds;
    }
    hydra::validate_config(cfg);
    return cfg;
}

hydra::EpochTime resolve_time(const hydra::Scenario& sc, const std::string& iso) {
    if (iso.empty()) return sc.start;
    const auto t = hydra::EpochTime::parse_iso8601(iso);
    if (!t) {
        throw hydra::ConfigError("--time: not an ISO-8601 UTC timestamp: " + iso);
    }
    return *t;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Configuration file (key = value lines)");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--time", opts.time_iso, "Snapshot time (ISO-8601 UTC)");
    cmd->add_option("--seeds", opts.seeds, "Evaluation seed list, e.g. 1,2,3 or 1..20");
    cmd->add_flag("--strict-tle", opts.strict_tle, "Abort on any malformed TLE record");
    cmd->add_flag("--lenient-tle", opts.lenient_tle, "Skip malformed TLE records");
    cmd->add_option("--max-iter", opts.max_iter, "Cascade iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO constellation cascade-risk simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string tle_file;

    CLI::App* cmd_snapshot = app.add_subcommand("snapshot", "Emit one topology snapshot as CSV");
    add_common(cmd_snapshot, opts);
    CLI::App* cmd_metrics = app.add_subcommand("metrics", "Emit node_metrics.csv for one time");
    add_common(cmd_metrics, opts);
    CLI::App* cmd_timeseries = app.add_subcommand("timeseries", "Run the sampled horizon");
    add_common(cmd_timeseries, opts);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run the attack-efficacy grid");
    add_common(cmd_sweep, opts);
    CLI::App* cmd_walker = app.add_subcommand("walker-gen", "Emit generated Walker elements");
    add_common(cmd_walker, opts);
    CLI::App* cmd_validate = app.add_subcommand("validate-tle", "Check a TLE file");
    add_common(cmd_validate, opts);
    cmd_validate->add_option("tle_file", tle_file, "TLE file to validate")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            const std::string text = hydra::read_text_file(tle_file);
            std::vector<hydra::TleParseIssue> issues;
            const auto records = hydra::parse_tle(
                text, opts.strict_tle ? hydra::TleMode::Strict : hydra::TleMode::Lenient,
                &issues);
            for (const auto& issue : issues) {
                std::cout << "line " << issue.line_number << ": " << issue.message << "\n";
            }
            std::cout << records.size() << " records parsed, " << issues.size() << " skipped\n";
            return issues.empty() ? 0 : 2;
        }

        const hydra::SimConfig cfg = resolve_config(opts);
        const hydra::Scenario sc = hydra::load_scenario(cfg);
        std::filesystem::create_directories(opts.out_dir);
        const std::filesystem::path out(opts.out_dir);

        if (cmd_walker->parsed()) {
            hydra::write_text_file((out / "elements.csv").string(),
                                   hydra::render_elements_csv(sc.elements, sc.sat_names));
            std::cout << "wrote " << (out / "elements.csv").string() << " (" << sc.elements.size()
                      << " elements)\n";
        } else if (cmd_snapshot->parsed()) {
            const hydra::Snapshot snap = hydra::snapshot_at(sc, resolve_time(sc, opts.time_iso));
            hydra::write_text_file((out / "snapshot.csv").string(),
                                   hydra::render_snapshot_csv(snap));
            std::cout << "wrote " << (out / "snapshot.csv").string() << " (" << snap.node_count()
                      << " nodes, " << snap.edge_count() << " edges)\n";
        } else if (cmd_metrics->parsed()) {
            const hydra::Snapshot snap = hydra::snapshot_at(sc, resolve_time(sc, opts.time_iso));
            const hydra::StepMetrics step = hydra::analyze_step(sc, snap);
            hydra::write_text_file((out / "node_metrics.csv").string(),
                                   hydra::render_node_metrics_csv(step.report));
            hydra::write_text_file((out / "config_used.txt").string(), hydra::dump_config(cfg));
            std::cout << "wrote " << (out / "node_metrics.csv").string() << "\n";
        } else if (cmd_timeseries->parsed()) {
            const hydra::TimeseriesResult result = hydra::run_timeseries(sc);
            hydra::write_timeseries_outputs(result, cfg, opts.out_dir);
            std::cout << "wrote " << (out / "timeseries.csv").string() << " ("
                      << result.steps.size() << " steps)\n";
        } else if (cmd_sweep->parsed()) {
            const std::vector<hydra::SweepRow> rows = hydra::run_attack_sweep(sc);
            hydra::write_sweep_outputs(rows, cfg, opts.out_dir);
            std::cout << "wrote " << (out / "sweep.csv").string() << " (" << rows.size()
                      << " rows)\n";
        }
        return 0;
    } catch (const hydra::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const hydra::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
