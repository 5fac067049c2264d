#include "hydra/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "hydra/errors.hpp"

namespace hydra {

using namespace constants;

namespace {

bool is_ground(NodeKind k) { return k == NodeKind::Gateway || k == NodeKind::User; }

// Conservative slant-range bound for a ground node to see anything at all;
// used only to skip elevation evaluations.
double horizon_range_km(double sat_radius_km) {
    const double r = sat_radius_km;
    if (r <= kEarthRadiusKm) return 0.0;
    return std::sqrt(r * r - kEarthRadiusKm * kEarthRadiusKm) + 50.0;
}

}  // namespace

bool visibility(NodeKind kind_a, const Vec3& pos_a,
                NodeKind kind_b, const Vec3& pos_b,
                const TopologyConfig& cfg) {
    const double dist = distance(pos_a, pos_b);
    if (kind_a == NodeKind::Satellite && kind_b == NodeKind::Satellite) {
        if (dist > cfg.isl_max_km) return false;
        return line_of_sight(EcefPosition{pos_a}, EcefPosition{pos_b}, cfg.grazing_margin_km);
    }
    const bool ground_space = (is_ground(kind_a) && kind_b == NodeKind::Satellite) ||
                              (is_ground(kind_b) && kind_a == NodeKind::Satellite);
    if (ground_space) {
        if (dist == 0.0) return true;
        if (cfg.ground_max_km > 0.0 && dist > cfg.ground_max_km) return false;
        const Vec3& ground = is_ground(kind_a) ? pos_a : pos_b;
        const Vec3& sat = is_ground(kind_a) ? pos_b : pos_a;
        if (elevation_angle(EcefPosition{ground}, EcefPosition{sat}) < cfg.min_elevation_deg)
            return false;
        return line_of_sight(EcefPosition{ground}, EcefPosition{sat}, 0.0);
    }
    throw ConfigError(std::string("visibility: unsupported link pairing ") +
                      to_string(kind_a) + "-" + to_string(kind_b));
}

ActiveSelection select_active_rich(const std::vector<SatelliteState>& sats,
                                   const GroundModel& ground,
                                   const TopologyConfig& cfg) {
    ActiveSelection sel;
    const int n_sats = static_cast<int>(sats.size());
    std::vector<char> in_active(n_sats, 0);

    double max_sat_radius = 0.0;
    for (const SatelliteState& s : sats) max_sat_radius = std::max(max_sat_radius, s.pos_ecef.norm());
    const double prefilter_km = horizon_range_km(max_sat_radius);

    struct Candidate {
        double elevation;
        double dist;
        int sat;
    };

    auto visible_from = [&](const GeodeticPosition& g, std::vector<Candidate>& out) {
        out.clear();
        const Vec3 gp = geodetic_to_ecef(g).v;
        for (int s = 0; s < n_sats; ++s) {
            const double d = distance(gp, sats[s].pos_ecef);
            if (d > prefilter_km) continue;
            if (cfg.ground_max_km > 0.0 && d > cfg.ground_max_km) continue;
            const double el = elevation_angle(EcefPosition{gp}, EcefPosition{sats[s].pos_ecef});
            if (el < cfg.min_elevation_deg) continue;
            out.push_back({el, d, s});
        }
    };

    std::vector<Candidate> cand;
    sel.user_sats.resize(ground.users.size());
    for (size_t u = 0; u < ground.users.size(); ++u) {
        visible_from(ground.users[u].position, cand);
        std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
            if (a.elevation != b.elevation) return a.elevation > b.elevation;
            if (a.dist != b.dist) return a.dist < b.dist;
            return a.sat < b.sat;
        });
        const int k = std::min<int>(cfg.user_top_k, static_cast<int>(cand.size()));
        for (int i = 0; i < k; ++i) {
            sel.user_sats[u].push_back(cand[i].sat);
            in_active[cand[i].sat] = 1;
        }
    }

    sel.gateway_sats.resize(ground.gateways.size());
    for (size_t g = 0; g < ground.gateways.size(); ++g) {
        visible_from(ground.gateways[g].position, cand);
        std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
            if (a.dist != b.dist) return a.dist < b.dist;
            return a.sat < b.sat;
        });
        const int k = std::min<int>(cfg.gateway_top_k, static_cast<int>(cand.size()));
        for (int i = 0; i < k; ++i) {
            sel.gateway_sats[g].push_back(cand[i].sat);
            in_active[cand[i].sat] = 1;
        }
    }

    // k-NN neighborhood expansion over ISL-feasible links.
    if (cfg.expand_hops > 0) {
        std::vector<int> frontier;
        for (int s = 0; s < n_sats; ++s)
            if (in_active[s]) frontier.push_back(s);
        for (int hop = 0; hop < cfg.expand_hops && !frontier.empty(); ++hop) {
            std::vector<int> next;
            for (int s : frontier) {
                std::vector<std::pair<double, int>> nn;
                for (int o = 0; o < n_sats; ++o) {
                    if (o == s) continue;
                    const double d = distance(sats[s].pos_ecef, sats[o].pos_ecef);
                    if (d > cfg.isl_max_km) continue;
                    if (!line_of_sight(EcefPosition{sats[s].pos_ecef},
                                       EcefPosition{sats[o].pos_ecef}, cfg.grazing_margin_km))
                        continue;
                    nn.push_back({d, o});
                }
                std::sort(nn.begin(), nn.end());
                const int k = std::min<int>(cfg.isl_k_max, static_cast<int>(nn.size()));
                for (int i = 0; i < k; ++i) {
                    const int o = nn[i].second;
                    if (!in_active[o]) {
                        in_active[o] = 1;
                        next.push_back(o);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
    }

    for (int s = 0; s < n_sats; ++s)
        if (in_active[s]) sel.active.push_back(s);
    return sel;
}

std::vector<int> select_active_satellites(const std::vector<SatelliteState>& sats,
                                          const GroundModel& ground,
                                          const TopologyConfig& cfg) {
    return select_active_rich(sats, ground, cfg).active;
}

std::vector<IslEdge> build_isl_mesh(const std::vector<Vec3>& sat_positions,
                                    const TopologyConfig& cfg) {
    const int n = static_cast<int>(sat_positions.size());
    std::set<std::pair<int, int>> proposed;
    for (int s = 0; s < n; ++s) {
        std::vector<std::pair<double, int>> nn;
        for (int o = 0; o < n; ++o) {
            if (o == s) continue;
            const double d = distance(sat_positions[s], sat_positions[o]);
            if (d > cfg.isl_max_km) continue;
            if (!line_of_sight(EcefPosition{sat_positions[s]}, EcefPosition{sat_positions[o]},
                               cfg.grazing_margin_km))
                continue;
            nn.push_back({d, o});
        }
        std::sort(nn.begin(), nn.end());
        const int k = std::min<int>(cfg.isl_k_max, static_cast<int>(nn.size()));
        for (int i = 0; i < k; ++i) {
            proposed.insert({std::min(s, nn[i].second), std::max(s, nn[i].second)});
        }
    }

    struct Proposal {
        double length;
        int a, b;
    };
    std::vector<Proposal> order;
    order.reserve(proposed.size());
    for (const auto& [a, b] : proposed) {
        order.push_back({distance(sat_positions[a], sat_positions[b]), a, b});
    }
    std::sort(order.begin(), order.end(), [](const Proposal& x, const Proposal& y) {
        if (x.length != y.length) return x.length < y.length;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    std::vector<int> degree(n, 0);
    std::set<std::pair<int, int>> accepted;
    std::vector<IslEdge> out;
    for (const Proposal& p : order) {
        if (degree[p.a] >= cfg.isl_k_max || degree[p.b] >= cfg.isl_k_max) continue;
        ++degree[p.a];
        ++degree[p.b];
        accepted.insert({p.a, p.b});
        out.push_back({p.a, p.b, p.length});
    }

    // Completion pass: k-NN proposals alone leave seam satellites short of
    // k_max even when mutually feasible partners exist. Re-propose among
    // the unsaturated pairs, again shortest-first.
    std::vector<Proposal> leftovers;
    for (int a = 0; a < n; ++a) {
        if (degree[a] >= cfg.isl_k_max) continue;
        for (int b = a + 1; b < n; ++b) {
            if (degree[b] >= cfg.isl_k_max) continue;
            if (accepted.count({a, b})) continue;
            const double d = distance(sat_positions[a], sat_positions[b]);
            if (d > cfg.isl_max_km) continue;
            if (!line_of_sight(EcefPosition{sat_positions[a]}, EcefPosition{sat_positions[b]},
                               cfg.grazing_margin_km))
                continue;
            leftovers.push_back({d, a, b});
        }
    }
    std::sort(leftovers.begin(), leftovers.end(), [](const Proposal& x, const Proposal& y) {
        if (x.length != y.length) return x.length < y.length;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    for (const Proposal& p : leftovers) {
        if (degree[p.a] >= cfg.isl_k_max || degree[p.b] >= cfg.isl_k_max) continue;
        ++degree[p.a];
        ++degree[p.b];
        out.push_back({p.a, p.b, p.length});
    }
    return out;
}

int beam_sector(const GeodeticPosition& sub_satellite,
                const GeodeticPosition& ground, int sectors) {
    const double az = bearing_deg(sub_satellite.lat_deg, sub_satellite.lon_deg,
                                  ground.lat_deg, ground.lon_deg);
    int idx = static_cast<int>(std::floor(az / (360.0 / sectors)));
    if (idx >= sectors) idx = sectors - 1;
    if (idx < 0) idx = 0;
    return idx;
}

Snapshot build_snapshot(const EpochTime& t,
                        const std::vector<SatelliteState>& sats,
                        const GroundModel& ground,
                        const TopologyConfig& topo,
                        const CapacityConfig& caps) {
    Snapshot snap;
    snap.time = t;

    std::vector<NodeId> gw_ids;
    gw_ids.reserve(ground.gateways.size());
    for (const GroundGateway& g : ground.gateways) {
        Node n;
        n.name = g.name;
        n.kind = NodeKind::Gateway;
        n.geodetic = g.position;
        n.pos_ecef = geodetic_to_ecef(g.position).v;
        gw_ids.push_back(snap.add_node(std::move(n)));
    }

    std::vector<NodeId> user_ids;
    user_ids.reserve(ground.users.size());
    for (const GroundUser& u : ground.users) {
        Node n;
        n.name = u.name;
        n.kind = NodeKind::User;
        n.geodetic = u.position;
        n.pos_ecef = geodetic_to_ecef(u.position).v;
        n.pop_weight = u.pop_weight;
        n.adoption_beta = u.adoption_beta;
        user_ids.push_back(snap.add_node(std::move(n)));
    }

    const ActiveSelection sel = select_active_rich(sats, ground, topo);

    std::vector<NodeId> sat_node(sats.size(), kInvalidNode);
    std::vector<GeodeticPosition> sub_point(sats.size());
    for (int s : sel.active) {
        Node n;
        n.name = sats[s].name;
        n.kind = NodeKind::Satellite;
        n.pos_ecef = sats[s].pos_ecef;
        sub_point[s] = ecef_to_geodetic(EcefPosition{sats[s].pos_ecef});
        n.geodetic = sub_point[s];
        n.hardware_cap_mbps = caps.sat_hardware_mbps;
        sat_node[s] = snap.add_node(std::move(n));
    }

    // Beam layer: fixed azimuth sectors starting at true north, plus one
    // feeder beam per visible gateway.
    std::vector<std::vector<NodeId>> user_beam(sats.size());
    for (int s : sel.active) {
        user_beam[s].resize(topo.beams_per_sat, kInvalidNode);
        for (int b = 0; b < topo.beams_per_sat; ++b) {
            Node n;
            char name[96];
            std::snprintf(name, sizeof(name), "%s:UB%02d", sats[s].name.c_str(), b);
            n.name = name;
            n.kind = NodeKind::UserBeam;
            n.pos_ecef = sats[s].pos_ecef;
            n.geodetic = sub_point[s];
            n.parent = sat_node[s];
            const NodeId id = snap.add_node(std::move(n));
            user_beam[s][b] = id;
            snap.add_edge({sat_node[s], id, EdgeKind::Internal, caps.sat_hardware_mbps, 0.0, 0.0});
        }
        // Feeder beams follow the gateway assignment from the selection
        // step: each gateway trunks through its top-K_g satellites.
        for (size_t g = 0; g < ground.gateways.size(); ++g) {
            const auto& assigned = sel.gateway_sats[g];
            if (std::find(assigned.begin(), assigned.end(), s) == assigned.end()) continue;
            const Vec3 gw_pos = snap.nodes[gw_ids[g]].pos_ecef;
            Node n;
            char name[96];
            std::snprintf(name, sizeof(name), "%s:FB-%s", sats[s].name.c_str(),
                          ground.gateways[g].name.c_str());
            n.name = name;
            n.kind = NodeKind::FeederBeam;
            n.pos_ecef = sats[s].pos_ecef;
            n.geodetic = sub_point[s];
            n.parent = sat_node[s];
            const NodeId id = snap.add_node(std::move(n));
            snap.add_edge({sat_node[s], id, EdgeKind::Internal, caps.sat_hardware_mbps, 0.0, 0.0});
            const double len = distance(sats[s].pos_ecef, gw_pos);
            snap.add_edge({id, gw_ids[g], EdgeKind::Feeder, caps.feeder_edge_mbps,
                           propagation_delay_ms(len), len});
        }
    }

    for (size_t u = 0; u < ground.users.size(); ++u) {
        for (int s : sel.user_sats[u]) {
            const int sector = beam_sector(sub_point[s], ground.users[u].position,
                                           topo.beams_per_sat);
            const NodeId beam = user_beam[s][sector];
            const double len = distance(snap.nodes[user_ids[u]].pos_ecef, sats[s].pos_ecef);
            snap.add_edge({user_ids[u], beam, EdgeKind::Access, caps.access_edge_mbps,
                           propagation_delay_ms(len), len});
        }
    }

    std::vector<Vec3> active_pos;
    active_pos.reserve(sel.active.size());
    for (int s : sel.active) active_pos.push_back(sats[s].pos_ecef);
    for (const IslEdge& e : build_isl_mesh(active_pos, topo)) {
        snap.add_edge({sat_node[sel.active[e.sat_a]], sat_node[sel.active[e.sat_b]],
                       EdgeKind::Isl, caps.isl_edge_mbps,
                       propagation_delay_ms(e.length_km), e.length_km});
    }

    assign_capacities(snap, caps);
    snap.build_adjacency();
    return snap;
}

void assign_capacities(Snapshot& snapshot, const CapacityConfig& caps) {
    if (caps.user_beam_mbps <= 0.0 || caps.feeder_beam_mbps <= 0.0 ||
        caps.gateway_mbps <= 0.0 || caps.sat_hardware_mbps <= 0.0) {
        throw ConfigError("assign_capacities: node capacity defaults must be positive");
    }
    // Aggregate non-internal edge capacity per satellite subtree (the
    // satellite itself plus its beams).
    std::vector<double> phy_sum(snapshot.nodes.size(), 0.0);
    auto credit = [&](NodeId id, double cap) {
        const Node& n = snapshot.nodes[id];
        if (n.kind == NodeKind::Satellite) {
            phy_sum[id] += cap;
        } else if (n.is_beam() && n.parent != kInvalidNode) {
            phy_sum[n.parent] += cap;
        }
    };
    for (const Edge& e : snapshot.edges) {
        if (e.kind == EdgeKind::Internal) continue;
        credit(e.src, e.capacity_mbps);
        credit(e.dst, e.capacity_mbps);
    }
    for (NodeId id = 0; id < snapshot.nodes.size(); ++id) {
        Node& n = snapshot.nodes[id];
        switch (n.kind) {
            case NodeKind::Satellite:
                n.capacity_mbps = std::min(n.hardware_cap_mbps > 0.0 ? n.hardware_cap_mbps
                                                                     : caps.sat_hardware_mbps,
                                           phy_sum[id]);
                break;
            case NodeKind::UserBeam:
                n.capacity_mbps = caps.user_beam_mbps;
                break;
            case NodeKind::FeederBeam:
                n.capacity_mbps = caps.feeder_beam_mbps;
                break;
            case NodeKind::Gateway:
                n.capacity_mbps = caps.gateway_mbps;
                break;
            case NodeKind::User:
                n.capacity_mbps = std::numeric_limits<double>::infinity();
                break;
        }
    }
}

double shannon_capacity(double bandwidth_mhz, double snr) {
    if (bandwidth_mhz <= 0.0 || snr < 0.0) {
        throw DomainError("shannon_capacity: bandwidth must be positive, SNR non-negative");
    }
    return bandwidth_mhz * std::log2(1.0 + snr);
}

double link_snr(double tx_power_w, double gain_tx, double gain_rx,
                double noise_density_w_hz, double bandwidth_hz,
                double distance_km, double frequency_ghz) {
    if (tx_power_w <= 0.0 || gain_tx <= 0.0 || gain_rx <= 0.0 ||
        noise_density_w_hz <= 0.0 || bandwidth_hz <= 0.0 ||
        distance_km <= 0.0 || frequency_ghz <= 0.0) {
        throw DomainError("link_snr: all parameters must be positive");
    }
    const double d_m = distance_km * 1e3;
    const double f_hz = frequency_ghz * 1e9;
    const double c = kSpeedOfLightKmPerS * 1e3;
    const double root = 4.0 * kPi * d_m * f_hz / c;
    const double path_loss = root * root;
    return tx_power_w * gain_tx * gain_rx / (noise_density_w_hz * bandwidth_hz * path_loss);
}

}  // namespace hydra
