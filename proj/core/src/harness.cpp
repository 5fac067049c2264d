#include "hydra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "hydra/cascade.hpp"
#include "hydra/csv.hpp"
#include "hydra/errors.hpp"
#include "hydra/parallel.hpp"
#include "hydra/rng.hpp"

namespace hydra {

namespace {

std::string sat_name_for(const TleRecord& rec, std::set<std::string>& used) {
    std::string base = rec.name.empty() ? "SAT-" + std::to_string(rec.catalog_number) : rec.name;
    for (char& c : base)
        if (c == ',' || c == ' ') c = '_';
    std::string name = base;
    int suffix = 1;
    while (!used.insert(name).second) name = base + "-" + std::to_string(suffix++);
    return name;
}

}  // namespace

Scenario load_scenario(const SimConfig& cfg) {
    Scenario sc;
    sc.cfg = cfg;
    const auto start = EpochTime::parse_iso8601(cfg.start_utc);
    if (!start) {
        throw ConfigError("sim.start_utc: not an ISO-8601 UTC timestamp");
    }
    sc.start = *start;

    if (cfg.source == "walker") {
        sc.elements = generate_walker(cfg.walker, sc.start);
        sc.sat_names.reserve(sc.elements.size());
        char buf[32];
        for (std::size_t i = 0; i < sc.elements.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "SAT-%04zu", i);
            sc.sat_names.push_back(buf);
        }
        sc.mode = cfg.propagator == "j2" ? PropagationMode::J2 : PropagationMode::TwoBody;
    } else {
        if (cfg.tle_path.empty()) {
            throw ConfigError("constellation.tle_path: required when source is tle");
        }
        const std::string text = read_text_file(cfg.tle_path);
        std::vector<TleParseIssue> issues;
        const auto records = parse_tle(text, cfg.tle_strict ? TleMode::Strict : TleMode::Lenient,
                                       &issues);
        for (const TleParseIssue& issue : issues) {
            std::cerr << "tle: skipped record at line " << issue.line_number << ": "
                      << issue.message << "\n";
        }
        if (records.empty()) {
            throw InputError("no parsable TLE records in " + cfg.tle_path);
        }
        std::set<std::string> used;
        for (const TleRecord& rec : records) {
            sc.elements.push_back(rec.parsed);
            sc.sat_names.push_back(sat_name_for(rec, used));
        }
        sc.mode = cfg.propagator == "two_body" ? PropagationMode::TwoBody : PropagationMode::J2;
    }

    const std::vector<CityRecord> table = cfg.city_table_path.empty()
                                              ? default_city_table()
                                              : parse_city_table(read_text_file(cfg.city_table_path));
    sc.ground = build_ground_model(table, cfg.users_total, cfg.user_radius_km,
                                   cfg.placement_seed);
    return sc;
}

Snapshot snapshot_at(const Scenario& sc, const EpochTime& t) {
    const std::vector<EcefPosition> positions = constellation_positions(sc.elements, t, sc.mode);
    std::vector<SatelliteState> sats(sc.elements.size());
    for (std::size_t i = 0; i < sats.size(); ++i) {
        sats[i] = {sc.sat_names[i], positions[i].v};
    }
    return build_snapshot(t, sats, sc.ground, sc.cfg.topo, sc.cfg.caps);
}

std::vector<EpochTime> sample_times(const EpochTime& start, double horizon_minutes,
                                    double step_minutes) {
    std::vector<EpochTime> out;
    if (step_minutes <= 0.0) {
        throw ConfigError("sample_times: step must be positive");
    }
    double t = 0.0;
    while (t <= horizon_minutes + 1e-9) {
        out.push_back(start.plus_minutes(t));
        t += step_minutes;
    }
    if (out.empty() || out.back() != start.plus_minutes(horizon_minutes)) {
        out.push_back(start.plus_minutes(horizon_minutes));
    }
    return out;
}

namespace {

/// Connectivity graph over risk-eligible nodes (all edge kinds whose
/// endpoints are both risk-eligible).
SimpleGraph risk_subgraph(const Snapshot& snapshot) {
    SimpleGraph g;
    std::vector<std::uint32_t> remap(snapshot.node_count(), 0);
    std::uint32_t next = 0;
    for (NodeId id = 0; id < snapshot.node_count(); ++id) {
        if (snapshot.risk_eligible(id)) remap[id] = next++;
    }
    g.n = next;
    for (const Edge& e : snapshot.edges) {
        if (!snapshot.risk_eligible(e.src) || !snapshot.risk_eligible(e.dst)) continue;
        g.edges.push_back({remap[e.src], remap[e.dst]});
    }
    return g;
}

std::optional<double> mean_defined(const std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

StepMetrics analyze_step(const Scenario& sc, const Snapshot& snapshot) {
    const SimConfig& cfg = sc.cfg;
    StepMetrics out;
    out.time = snapshot.time;

    const Centralities cent = centralities(snapshot_graph(snapshot));
    const std::vector<std::uint32_t> deg_phy = snapshot.physical_degrees();

    // Traffic for the structural metrics (fixed-demand regime).
    RoutingParams routing{cfg.delta_per_ms, 1e-9};
    const std::vector<Flow> metric_flows =
        generate_flows(snapshot, cfg.demand, snapshot.time, cfg.traffic_seed);
    out.systemic_risk = systemic_risk(snapshot, metric_flows, routing);
    const SimpleGraph risk_graph = risk_subgraph(snapshot);
    out.gcr = risk_graph.n > 0 ? giant_component_ratio(risk_graph) : 1.0;

    // Per-node removal trials, one per (risk node, trial seed). Each seed's
    // baseline routing is shared across all of its trials.
    std::vector<NodeId> risk_nodes;
    for (NodeId id = 0; id < snapshot.node_count(); ++id) {
        if (snapshot.risk_eligible(id)) risk_nodes.push_back(id);
    }
    const std::size_t n_risk = risk_nodes.size();
    const std::size_t n_seeds = cfg.trial_seeds.size();
    std::vector<double> trial_fraction(n_risk * n_seeds, 0.0);

    if (n_seeds > 0 && n_risk > 0) {
        CascadeConfig cascade_cfg{routing, cfg.max_iter};
        std::vector<std::unique_ptr<CascadeRunner>> runners;
        runners.reserve(n_seeds);
        for (std::size_t s = 0; s < n_seeds; ++s) {
            runners.push_back(std::make_unique<CascadeRunner>(
                snapshot,
                generate_flows(snapshot, cfg.demand, snapshot.time, cfg.trial_seeds[s]),
                cascade_cfg));
        }
        std::vector<CascadeRunner::Workspace> workspaces(worker_count());
        parallel_for(n_risk * n_seeds, [&](std::size_t idx, int worker) {
            const std::size_t s = idx / n_risk;
            const NodeId v = risk_nodes[idx % n_risk];
            AttackScenario attack;
            attack.alpha = 1.0;
            attack.targets[v] = 1.0;
            const CascadeResult r = runners[s]->run(attack, workspaces[worker]);
            trial_fraction[idx] =
                static_cast<double>(r.final_set.size()) / static_cast<double>(n_risk);
        });
    }

    out.report.rows.resize(snapshot.node_count());
    for (NodeId id = 0; id < snapshot.node_count(); ++id) {
        RiskRow& row = out.report.rows[id];
        const Node& n = snapshot.nodes[id];
        row.name = n.name;
        row.kind = n.kind;
        if (n.geodetic) {
            row.lat_deg = n.geodetic->lat_deg;
            row.lon_deg = n.geodetic->lon_deg;
        }
        row.degree_phy = deg_phy[id];
        row.betweenness = cent.betweenness[id];
        row.pagerank = cent.pagerank[id];
    }
    if (n_seeds > 0) {
        for (std::size_t i = 0; i < n_risk; ++i) {
            std::vector<double> fractions(n_seeds);
            for (std::size_t s = 0; s < n_seeds; ++s) fractions[s] = trial_fraction[s * n_risk + i];
            RiskRow& row = out.report.rows[risk_nodes[i]];
            row.cfr = pairwise_sum(fractions) / static_cast<double>(n_seeds);
            row.trial_count = static_cast<std::uint32_t>(n_seeds);
            row.hbc = hbc(row.cfr, row.degree_phy);
        }
    }
    for (std::size_t idx : detect_black_swans(out.report, cfg.black_swan_degree_pct,
                                              cfg.black_swan_hbc_pct)) {
        out.report.rows[idx].black_swan = true;
    }

    std::vector<double> hbc_sat, hbc_gw, hbc_fb, hbc_ub;
    for (const RiskRow& row : out.report.rows) {
        if (!row.hbc) continue;
        switch (row.kind) {
            case NodeKind::Satellite: hbc_sat.push_back(*row.hbc); break;
            case NodeKind::Gateway: hbc_gw.push_back(*row.hbc); break;
            case NodeKind::FeederBeam: hbc_fb.push_back(*row.hbc); break;
            case NodeKind::UserBeam: hbc_ub.push_back(*row.hbc); break;
            case NodeKind::User: break;
        }
    }
    out.mean_hbc_satellite = mean_defined(hbc_sat);
    out.mean_hbc_gateway = mean_defined(hbc_gw);
    out.mean_hbc_feederbeam = mean_defined(hbc_fb);
    out.mean_hbc_userbeam = mean_defined(hbc_ub);
    return out;
}

std::optional<RankMetric> rank_metric_from_string(const std::string& name) {
    if (name == "hbc") return RankMetric::Hbc;
    if (name == "degree") return RankMetric::Degree;
    if (name == "betweenness") return RankMetric::Betweenness;
    if (name == "pagerank") return RankMetric::Pagerank;
    return std::nullopt;
}

std::vector<NodeId> rank_targets(const RiskReport& report, RankMetric metric, std::size_t k) {
    struct Entry {
        double value;
        NodeId id;
    };
    std::vector<Entry> entries;
    for (NodeId id = 0; id < report.rows.size(); ++id) {
        const RiskRow& row = report.rows[id];
        if (row.kind == NodeKind::User) continue;
        std::optional<double> value;
        switch (metric) {
            case RankMetric::Hbc: value = row.hbc; break;
            case RankMetric::Degree: value = static_cast<double>(row.degree_phy); break;
            case RankMetric::Betweenness: value = row.betweenness; break;
            case RankMetric::Pagerank: value = row.pagerank; break;
        }
        if (value) entries.push_back({*value, id});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.id < b.id;
    });
    if (k > entries.size()) {
        std::cerr << "rank_targets: requested " << k << " targets, only " << entries.size()
                  << " rankable\n";
        k = entries.size();
    }
    std::vector<NodeId> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(entries[i].id);
    return out;
}

TimeseriesResult run_timeseries(const Scenario& sc) {
    TimeseriesResult result;
    const std::vector<EpochTime> times =
        sample_times(sc.start, sc.cfg.horizon_minutes, sc.cfg.step_minutes);
    for (const EpochTime& t : times) {
        const Snapshot snapshot = snapshot_at(sc, t);
        result.steps.push_back(analyze_step(sc, snapshot));
    }
    return result;
}

std::vector<SweepRow> run_attack_sweep(const Scenario& sc) {
    const SimConfig& cfg = sc.cfg;
    RoutingParams routing{cfg.delta_per_ms, 1e-9};
    CascadeConfig cascade_cfg{routing, cfg.max_iter};
    std::vector<SweepRow> rows;

    const bool need_trials =
        std::find(cfg.metrics.begin(), cfg.metrics.end(), "hbc") != cfg.metrics.end();

    for (std::size_t time_idx = 0; time_idx < cfg.sweep_times_minutes.size(); ++time_idx) {
        const EpochTime t = sc.start.plus_minutes(cfg.sweep_times_minutes[time_idx]);
        const Snapshot snapshot = snapshot_at(sc, t);

        // Ranking phase. HBC needs removal trials on the trial seeds;
        // the topological metrics need only the report skeleton.
        Scenario ranking_sc = sc;
        if (!need_trials) ranking_sc.cfg.trial_seeds.clear();
        const StepMetrics step = analyze_step(ranking_sc, snapshot);

        std::vector<NodeId> risk_nodes;
        for (NodeId id = 0; id < snapshot.node_count(); ++id) {
            if (snapshot.risk_eligible(id)) risk_nodes.push_back(id);
        }
        const std::size_t n_risk = risk_nodes.size();
        const std::size_t n_total = snapshot.node_count();
        if (n_risk == 0) {
            throw DomainError("run_attack_sweep: snapshot has no risk-eligible nodes");
        }

        std::size_t max_k = 0;
        std::vector<std::size_t> k_of_fraction;
        for (double f : cfg.attack_fractions) {
            const std::size_t k = static_cast<std::size_t>(
                std::ceil(f * static_cast<double>(n_risk)));
            k_of_fraction.push_back(std::max<std::size_t>(1, k));
            max_k = std::max(max_k, k_of_fraction.back());
        }

        std::map<std::string, std::vector<NodeId>> ranked;
        for (const std::string& metric : cfg.metrics) {
            if (metric == "random") continue;
            ranked[metric] = rank_targets(step.report, *rank_metric_from_string(metric), max_k);
        }

        // Baselines are per evaluation seed and shared across the grid.
        std::vector<std::unique_ptr<CascadeRunner>> runners;
        for (std::uint64_t seed : cfg.seeds) {
            runners.push_back(std::make_unique<CascadeRunner>(
                snapshot, generate_flows(snapshot, cfg.demand, t, seed), cascade_cfg));
        }

        struct Cell {
            std::size_t metric_idx, alpha_idx, fraction_idx, seed_idx;
        };
        std::vector<Cell> cells;
        for (std::size_t m = 0; m < cfg.metrics.size(); ++m)
            for (std::size_t a = 0; a < cfg.alpha_grid.size(); ++a)
                for (std::size_t f = 0; f < cfg.attack_fractions.size(); ++f)
                    for (std::size_t s = 0; s < cfg.seeds.size(); ++s)
                        cells.push_back({m, a, f, s});

        std::vector<SweepRow> time_rows(cells.size());
        std::vector<CascadeRunner::Workspace> workspaces(worker_count());
        parallel_for(cells.size(), [&](std::size_t idx, int worker) {
            const Cell& cell = cells[idx];
            const std::string& metric = cfg.metrics[cell.metric_idx];
            const std::size_t k = k_of_fraction[cell.fraction_idx];
            const std::uint64_t seed = cfg.seeds[cell.seed_idx];

            AttackScenario attack;
            attack.alpha = cfg.alpha_grid[cell.alpha_idx];
            if (metric == "random") {
                // Uniform draw without replacement; a fresh deterministic
                // stream per (time, fraction, seed).
                Rng rng(mix_seed(seed ^ 0x72616e64ull, time_idx, cell.fraction_idx));
                std::vector<NodeId> pool = risk_nodes;
                for (std::size_t i = 0; i < k && i < pool.size(); ++i) {
                    const std::size_t j = i + uniform_index(rng, pool.size() - i);
                    std::swap(pool[i], pool[j]);
                    attack.targets[pool[i]] = 1.0;
                }
            } else {
                const std::vector<NodeId>& order = ranked[metric];
                for (std::size_t i = 0; i < k && i < order.size(); ++i) {
                    attack.targets[order[i]] = 1.0;
                }
            }
            const std::size_t n_attacked = attack.targets.size();
            const CascadeResult r = runners[cell.seed_idx]->run(attack, workspaces[worker]);
            const CirValue c = cir(r, n_attacked, n_total);
            SweepRow& row = time_rows[idx];
            row.time = t;
            row.metric = metric;
            row.alpha = cfg.alpha_grid[cell.alpha_idx];
            row.fraction = cfg.attack_fractions[cell.fraction_idx];
            row.seed = seed;
            row.cir_leverage = c.leverage;
            row.cir_fraction = c.network_fraction;
            row.unserved_demand_mbps = r.unserved_demand_mbps;
            row.iterations = r.iterations;
        });
        rows.insert(rows.end(), std::make_move_iterator(time_rows.begin()),
                    std::make_move_iterator(time_rows.end()));
    }
    return rows;
}

std::string render_node_metrics_csv(const RiskReport& report) {
    std::string out = "node_id,kind,lat,lon,degree,betweenness,pagerank,cfr,hbc,"
                      "trial_count,black_swan\n";
    for (const RiskRow& row : report.rows) {
        out += row.name;
        out += ',';
        out += to_string(row.kind);
        out += ',';
        out += csv_double(row.lat_deg);
        out += ',';
        out += csv_double(row.lon_deg);
        out += ',';
        out += std::to_string(row.degree_phy);
        out += ',';
        out += csv_double(row.betweenness);
        out += ',';
        out += csv_double(row.pagerank);
        out += ',';
        out += csv_optional(row.cfr);
        out += ',';
        out += csv_optional(row.hbc);
        out += ',';
        out += std::to_string(row.trial_count);
        out += ',';
        out += row.black_swan ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string render_timeseries_csv(const std::vector<StepMetrics>& steps) {
    std::string out = "time_utc,gcr,systemic_risk,mean_hbc_satellite,mean_hbc_gateway,"
                      "mean_hbc_feederbeam,mean_hbc_userbeam\n";
    for (const StepMetrics& s : steps) {
        out += s.time.to_iso8601();
        out += ',';
        out += csv_double(s.gcr);
        out += ',';
        out += csv_double(s.systemic_risk);
        out += ',';
        out += csv_optional(s.mean_hbc_satellite);
        out += ',';
        out += csv_optional(s.mean_hbc_gateway);
        out += ',';
        out += csv_optional(s.mean_hbc_feederbeam);
        out += ',';
        out += csv_optional(s.mean_hbc_userbeam);
        out += '\n';
    }
    return out;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "time_utc,metric,alpha,fraction,seed,cir_leverage,cir_fraction,"
                      "unserved_demand_mbps,iterations\n";
    for (const SweepRow& r : rows) {
        out += r.time.to_iso8601();
        out += ',';
        out += r.metric;
        out += ',';
        out += csv_double(r.alpha);
        out += ',';
        out += csv_double(r.fraction);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += csv_double(r.cir_leverage);
        out += ',';
        out += csv_double(r.cir_fraction);
        out += ',';
        out += csv_double(r.unserved_demand_mbps);
        out += ',';
        out += std::to_string(r.iterations);
        out += '\n';
    }
    return out;
}

std::string render_top_nodes_csv(const std::vector<StepMetrics>& steps, int top_n) {
    // Time-mean HBC per node name over the steps where it was defined.
    struct Agg {
        std::vector<double> hbc;
        std::vector<double> cfr;
        NodeKind kind = NodeKind::Satellite;
        double lat = 0.0, lon = 0.0;
        std::uint32_t trials = 0;
    };
    std::map<std::string, Agg> agg;
    for (const StepMetrics& s : steps) {
        for (const RiskRow& row : s.report.rows) {
            if (!row.hbc) continue;
            Agg& a = agg[row.name];
            a.hbc.push_back(*row.hbc);
            if (row.cfr) a.cfr.push_back(*row.cfr);
            a.kind = row.kind;
            a.lat = row.lat_deg;
            a.lon = row.lon_deg;
            a.trials += row.trial_count;
        }
    }
    struct Entry {
        std::string name;
        double hbc, cfr;
        const Agg* a;
    };
    std::vector<Entry> entries;
    for (const auto& [name, a] : agg) {
        const double mean_hbc = pairwise_sum(a.hbc) / static_cast<double>(a.hbc.size());
        const double mean_cfr =
            a.cfr.empty() ? 0.0 : pairwise_sum(a.cfr) / static_cast<double>(a.cfr.size());
        entries.push_back({name, mean_hbc, mean_cfr, &a});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.hbc != y.hbc) return x.hbc > y.hbc;
        return x.name < y.name;
    });
    if (static_cast<int>(entries.size()) > top_n) entries.resize(top_n);

    std::string out = "node_id,kind,lat,lon,hbc,cfr,trial_count\n";
    for (const Entry& e : entries) {
        out += e.name;
        out += ',';
        out += to_string(e.a->kind);
        out += ',';
        out += csv_double(e.a->lat);
        out += ',';
        out += csv_double(e.a->lon);
        out += ',';
        out += csv_double(e.hbc);
        out += ',';
        out += csv_double(e.cfr);
        out += ',';
        out += std::to_string(e.a->trials);
        out += '\n';
    }
    return out;
}

std::string render_snapshot_csv(const Snapshot& snapshot) {
    std::string out = "src,dst,kind,capacity_mbps,delay_ms,length_km\n";
    for (const Edge& e : snapshot.edges) {
        out += snapshot.nodes[e.src].name;
        out += ',';
        out += snapshot.nodes[e.dst].name;
        out += ',';
        out += to_string(e.kind);
        out += ',';
        out += csv_double(e.capacity_mbps);
        out += ',';
        out += csv_double(e.delay_ms);
        out += ',';
        out += csv_double(e.length_km);
        out += '\n';
    }
    return out;
}

std::string render_elements_csv(const std::vector<MeanElements>& elements,
                                const std::vector<std::string>& names) {
    std::string out = "name,semi_major_axis_km,eccentricity,inclination_deg,raan_deg,"
                      "arg_perigee_deg,mean_anomaly_deg,mean_motion_rev_day,epoch_utc\n";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const MeanElements& el = elements[i];
        out += i < names.size() ? names[i] : "SAT-" + std::to_string(i);
        out += ',';
        out += csv_double(el.semi_major_axis_km);
        out += ',';
        out += csv_double(el.eccentricity);
        out += ',';
        out += csv_double(el.inclination_deg);
        out += ',';
        out += csv_double(el.raan_deg);
        out += ',';
        out += csv_double(el.arg_perigee_deg);
        out += ',';
        out += csv_double(el.mean_anomaly_deg);
        out += ',';
        out += csv_double(el.mean_motion_rev_day);
        out += ',';
        out += el.epoch.to_iso8601();
        out += '\n';
    }
    return out;
}

namespace {

std::string step_file_name(const EpochTime& start, const EpochTime& t) {
    const double minutes = t.seconds_since(start) / 60.0;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "node_metrics_%06.0f.csv", minutes);
    return buf;
}

}  // namespace

void write_timeseries_outputs(const TimeseriesResult& result, const SimConfig& cfg,
                              const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_text_file((dir / "timeseries.csv").string(), render_timeseries_csv(result.steps));
    write_text_file((dir / "top_nodes.csv").string(),
                    render_top_nodes_csv(result.steps, cfg.top_n));
    write_text_file((dir / "config_used.txt").string(), dump_config(cfg));
    if (cfg.per_step_node_metrics && !result.steps.empty()) {
        const EpochTime start = result.steps.front().time;
        for (const StepMetrics& s : result.steps) {
            write_text_file((dir / step_file_name(start, s.time)).string(),
                            render_node_metrics_csv(s.report));
        }
    }
}

void write_sweep_outputs(const std::vector<SweepRow>& rows, const SimConfig& cfg,
                         const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_text_file((dir / "sweep.csv").string(), render_sweep_csv(rows));
    write_text_file((dir / "config_used.txt").string(), dump_config(cfg));
}

}  // namespace hydra
