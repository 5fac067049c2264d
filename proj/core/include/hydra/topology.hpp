#ifndef HYDRA_TOPOLOGY_HPP_
#define HYDRA_TOPOLOGY_HPP_

#include <string>
#include <vector>

#include "hydra/ground.hpp"
#include "hydra/snapshot.hpp"

namespace hydra {

struct TopologyConfig {
    double isl_max_km = 5000.0;
    int isl_k_max = 4;
    double min_elevation_deg = 25.0;
    int beams_per_sat = 12;
    int user_top_k = 3;
    int gateway_top_k = 3;
    int expand_hops = 2;           // 0 disables neighborhood expansion
    double grazing_margin_km = 80.0;
    double ground_max_km = 0.0;    // 0 = no range cap on ground-space links
};

struct CapacityConfig {
    double user_beam_mbps = 2000.0;      // C_b
    double feeder_beam_mbps = 20000.0;
    double gateway_mbps = 50000.0;       // C_g
    double sat_hardware_mbps = 200000.0; // C_hw
    double isl_edge_mbps = 40000.0;
    double feeder_edge_mbps = 20000.0;
    double access_edge_mbps = 2000.0;
};

/// A propagated satellite, input to snapshot construction.
struct SatelliteState {
    std::string name;
    Vec3 pos_ecef;
};

/// Pairwise visibility predicate between node kinds at known positions.
/// Satellite-satellite pairs need range and line of sight; ground-space pairs
/// need elevation (and optionally range). Other pairings throw ConfigError.
bool visibility(NodeKind kind_a, const Vec3& pos_a,
                NodeKind kind_b, const Vec3& pos_b,
                const TopologyConfig& cfg);

/// Active-selection output: the set plus the per-ground-node rankings the
/// selection was derived from (reused to wire access and feeder edges).
struct ActiveSelection {
    std::vector<int> active;                      // sat indices, ascending
    std::vector<std::vector<int>> user_sats;      // per user, ranked, <= K
    std::vector<std::vector<int>> gateway_sats;   // per gateway, <= K_g
};

ActiveSelection select_active_rich(const std::vector<SatelliteState>& sats,
                                   const GroundModel& ground,
                                   const TopologyConfig& cfg);

/// Appendix-style selection: user-visible top-K sats, gateway top-K_g sats,
/// then optional k-NN expansion. Returns ascending sat indices.
std::vector<int> select_active_satellites(const std::vector<SatelliteState>& sats,
                                          const GroundModel& ground,
                                          const TopologyConfig& cfg);

struct IslEdge {
    int sat_a = 0;  // indices into the active satellite ordering
    int sat_b = 0;
    double length_km = 0.0;
};

/// Mutual-degree-capped k-NN mesh: every satellite proposes its k_max nearest
/// visible neighbors within range; proposals are accepted shortest-first
/// while both endpoints have residual degree.
std::vector<IslEdge> build_isl_mesh(const std::vector<Vec3>& sat_positions,
                                    const TopologyConfig& cfg);

/// Compose selection, beams, ISL mesh, access and feeder edges, and assign
/// capacities. Deterministic in its inputs.
Snapshot build_snapshot(const EpochTime& t,
                        const std::vector<SatelliteState>& sats,
                        const GroundModel& ground,
                        const TopologyConfig& topo,
                        const CapacityConfig& caps);

/// Fill node capacities: per-kind constants for beams and gateways; for each
/// satellite min(C_hw, sum of non-internal edge capacities over the satellite
/// and its beams). Users are uncapacitated. Idempotent.
void assign_capacities(Snapshot& snapshot, const CapacityConfig& caps);

/// Shannon-Hartley capacity in Mbps for bandwidth in MHz and a linear SNR.
double shannon_capacity(double bandwidth_mhz, double snr);

/// Free-space link budget: P*Gt*Gr / (N0 * B * (4 pi d f / c)^2).
double link_snr(double tx_power_w, double gain_tx, double gain_rx,
                double noise_density_w_hz, double bandwidth_hz,
                double distance_km, double frequency_ghz);

/// Azimuth sector index of a ground point seen from the sub-satellite point,
/// with `sectors` equal slices starting at true north.
int beam_sector(const GeodeticPosition& sub_satellite,
                const GeodeticPosition& ground, int sectors);

}  // namespace hydra

#endif  // HYDRA_TOPOLOGY_HPP_
