#ifndef HYDRA_TESTS_SYNTHETIC_HPP_
#define HYDRA_TESTS_SYNTHETIC_HPP_

// Hand-built snapshots for routing/cascade/analytics tests. Positions are
// irrelevant to those engines, so nodes sit at the origin unless given.

#include <string>

#include "hydra/snapshot.hpp"

namespace hydra::testsupport {

class GraphBuilder {
public:
    NodeId user(const std::string& name, double pop_weight = 1.0, double beta = 1.0,
                double lon_deg = 0.0) {
        Node n;
        n.name = name;
        n.kind = NodeKind::User;
        n.pop_weight = pop_weight;
        n.adoption_beta = beta;
        n.geodetic = GeodeticPosition{0.0, lon_deg, 0.0};
        n.capacity_mbps = std::numeric_limits<double>::infinity();
        return snap.add_node(std::move(n));
    }

    NodeId gateway(const std::string& name, double capacity = 1e9) {
        Node n;
        n.name = name;
        n.kind = NodeKind::Gateway;
        n.capacity_mbps = capacity;
        return snap.add_node(std::move(n));
    }

    NodeId satellite(const std::string& name, double capacity = 1e9) {
        Node n;
        n.name = name;
        n.kind = NodeKind::Satellite;
        n.capacity_mbps = capacity;
        return snap.add_node(std::move(n));
    }

    NodeId user_beam(const std::string& name, double capacity = 1e9,
                     NodeId parent = kInvalidNode) {
        Node n;
        n.name = name;
        n.kind = NodeKind::UserBeam;
        n.capacity_mbps = capacity;
        n.parent = parent;
        return snap.add_node(std::move(n));
    }

    NodeId feeder_beam(const std::string& name, double capacity = 1e9,
                       NodeId parent = kInvalidNode) {
        Node n;
        n.name = name;
        n.kind = NodeKind::FeederBeam;
        n.capacity_mbps = capacity;
        n.parent = parent;
        return snap.add_node(std::move(n));
    }

    EdgeId link(NodeId a, NodeId b, double capacity = 1e9, double delay_ms = 1.0,
                EdgeKind kind = EdgeKind::Isl) {
        return snap.add_edge({a, b, kind, capacity, delay_ms, delay_ms * 299.792458});
    }

    Snapshot finish() {
        snap.build_adjacency();
        return std::move(snap);
    }

    Snapshot snap;
};

}  // namespace hydra::testsupport

#endif  // HYDRA_TESTS_SYNTHETIC_HPP_
