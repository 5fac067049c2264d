#ifndef HYDRA_HARNESS_HPP_
#define HYDRA_HARNESS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hydra/analytics.hpp"
#include "hydra/config.hpp"
#include "hydra/snapshot.hpp"
#include "hydra/tle.hpp"

namespace hydra {

/// Config resolved into concrete inputs: element sets, ground segment,
/// propagation mode and start epoch.
struct Scenario {
    SimConfig cfg;
    std::vector<MeanElements> elements;
    std::vector<std::string> sat_names;
    GroundModel ground;
    PropagationMode mode = PropagationMode::TwoBody;
    EpochTime start;
};

/// Load TLE or Walker elements plus the city table per the config. File
/// problems throw InputError, config problems ConfigError.
Scenario load_scenario(const SimConfig& cfg);

/// Build the multi-layer snapshot at time t.
Snapshot snapshot_at(const Scenario& sc, const EpochTime& t);

/// Multiples of the step up to the horizon; the horizon end is always the
/// final sample even when the step does not divide it.
std::vector<EpochTime> sample_times(const EpochTime& start, double horizon_minutes,
                                    double step_minutes);

/// Per-step analytics: centralities, CFR/HBC from per-node removal trials
/// across the configured trial seeds, GCR, systemic risk, per-kind mean HBC.
struct StepMetrics {
    EpochTime time;
    double gcr = 0.0;
    double systemic_risk = 0.0;
    std::optional<double> mean_hbc_satellite;
    std::optional<double> mean_hbc_gateway;
    std::optional<double> mean_hbc_feederbeam;
    std::optional<double> mean_hbc_userbeam;
    RiskReport report;
};

StepMetrics analyze_step(const Scenario& sc, const Snapshot& snapshot);

enum class RankMetric { Hbc, Degree, Betweenness, Pagerank };

std::optional<RankMetric> rank_metric_from_string(const std::string& name);

/// Top-k risk-eligible nodes by the metric, descending, ties by node id.
/// Rows with undefined metric values are excluded. Asking for more nodes
/// than are rankable truncates (with a stderr note).
std::vector<NodeId> rank_targets(const RiskReport& report, RankMetric metric, std::size_t k);

struct SweepRow {
    EpochTime time;
    std::string metric;
    double alpha = 0.0;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    double cir_leverage = 0.0;
    double cir_fraction = 0.0;
    double unserved_demand_mbps = 0.0;
    int iterations = 0;
};

struct TimeseriesResult {
    std::vector<StepMetrics> steps;
};

TimeseriesResult run_timeseries(const Scenario& sc);

/// Attack-efficacy grid: for every (time, metric, alpha, fraction, seed),
/// degrade the top fraction of nodes by the metric at q=1 and record both
/// CIR variants. HBC ranks come from the trial seeds, never the evaluation
/// seeds. The `random` metric draws targets uniformly per (time, fraction,
/// seed).
std::vector<SweepRow> run_attack_sweep(const Scenario& sc);

// CSV renderers; byte-deterministic given equal inputs.
std::string render_node_metrics_csv(const RiskReport& report);
std::string render_timeseries_csv(const std::vector<StepMetrics>& steps);
std::string render_sweep_csv(const std::vector<SweepRow>& rows);
std::string render_top_nodes_csv(const std::vector<StepMetrics>& steps, int top_n);
std::string render_snapshot_csv(const Snapshot& snapshot);
std::string render_elements_csv(const std::vector<MeanElements>& elements,
                                const std::vector<std::string>& names);

/// timeseries.csv, per-step node_metrics_*.csv, top_nodes.csv and the
/// canonical config echo, all under out_dir.
void write_timeseries_outputs(const TimeseriesResult& result, const SimConfig& cfg,
                              const std::string& out_dir);
void write_sweep_outputs(const std::vector<SweepRow>& rows, const SimConfig& cfg,
                         const std::string& out_dir);

}  // namespace hydra

#endif  // HYDRA_HARNESS_HPP_
