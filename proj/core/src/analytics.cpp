#include "hydra/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "hydra/errors.hpp"

namespace hydra {

SimpleGraph snapshot_graph(const Snapshot& snapshot, const std::vector<char>* alive) {
    SimpleGraph g;
    g.n = snapshot.node_count();
    for (const Edge& e : snapshot.edges) {
        if (alive && (!(*alive)[e.src] || !(*alive)[e.dst])) continue;
        g.edges.push_back({e.src, e.dst});
    }
    return g;
}

namespace {

std::vector<std::vector<std::uint32_t>> adjacency(const SimpleGraph& g) {
    std::vector<std::vector<std::uint32_t>> adj(g.n);
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

}  // namespace

Centralities centralities(const SimpleGraph& g) {
    if (g.n == 0) {
        throw DomainError("centralities: empty graph");
    }
    const auto adj = adjacency(g);
    Centralities out;
    out.degree.assign(g.n, 0);
    for (std::size_t i = 0; i < g.n; ++i) out.degree[i] = static_cast<std::uint32_t>(adj[i].size());

    // Brandes (1998) accumulation over BFS DAGs.
    out.betweenness.assign(g.n, 0.0);
    std::vector<std::int64_t> sigma(g.n);
    std::vector<std::int32_t> dist(g.n);
    std::vector<double> delta(g.n);
    std::vector<std::uint32_t> stack_order;
    std::vector<std::vector<std::uint32_t>> preds(g.n);
    for (std::uint32_t s = 0; s < g.n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        stack_order.clear();
        sigma[s] = 1;
        dist[s] = 0;
        std::queue<std::uint32_t> q;
        q.push(s);
        while (!q.empty()) {
            const std::uint32_t v = q.front();
            q.pop();
            stack_order.push_back(v);
            for (std::uint32_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = stack_order.rbegin(); it != stack_order.rend(); ++it) {
            const std::uint32_t w = *it;
            for (std::uint32_t v : preds[w]) {
                delta[v] += static_cast<double>(sigma[v]) / static_cast<double>(sigma[w]) *
                            (1.0 + delta[w]);
            }
            if (w != s) out.betweenness[w] += delta[w];
        }
    }
    // Undirected: each pair counted twice; normalize into [0, 1].
    const double pairs = g.n > 2 ? static_cast<double>(g.n - 1) * (g.n - 2) : 1.0;
    for (double& b : out.betweenness) b = b / pairs;  // includes the 1/2 factor twice-counted

    // Power-iteration pagerank on the undirected graph; dangling mass is
    // spread uniformly.
    const double damping = 0.85;
    const double tol = 1e-9;
    out.pagerank.assign(g.n, 1.0 / static_cast<double>(g.n));
    std::vector<double> next(g.n);
    for (int iter = 0; iter < 1000; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            if (adj[i].empty()) dangling += out.pagerank[i];
        const double base = (1.0 - damping) / static_cast<double>(g.n) +
                            damping * dangling / static_cast<double>(g.n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t i = 0; i < g.n; ++i) {
            if (adj[i].empty()) continue;
            const double share = damping * out.pagerank[i] / static_cast<double>(adj[i].size());
            for (std::uint32_t w : adj[i]) next[w] += share;
        }
        double l1 = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) l1 += std::fabs(next[i] - out.pagerank[i]);
        out.pagerank.swap(next);
        if (l1 < tol) break;
    }
    return out;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("pearson: need two equal-length samples of size >= 2");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

double giant_component_ratio(const SimpleGraph& g) {
    if (g.n == 0) {
        throw DomainError("giant_component_ratio: empty graph");
    }
    const auto adj = adjacency(g);
    std::vector<char> seen(g.n, 0);
    std::size_t best = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::size_t size = 0;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            ++size;
            for (std::uint32_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        best = std::max(best, size);
    }
    return static_cast<double>(best) / static_cast<double>(g.n);
}

double systemic_risk(const Snapshot& snapshot, const LoadState& loads) {
    std::size_t total = 0, overloaded = 0;
    for (EdgeId e = 0; e < snapshot.edge_count(); ++e) {
        if (snapshot.edges[e].kind == EdgeKind::Internal) continue;
        ++total;
        if (loads.edge_load[e] > snapshot.edges[e].capacity_mbps) ++overloaded;
    }
    if (total == 0) return 0.0;
    return static_cast<double>(overloaded) / static_cast<double>(total);
}

double systemic_risk(const Snapshot& snapshot, const std::vector<Flow>& flows,
                     const RoutingParams& params) {
    auto [routed, loads] = route_all(snapshot, flows, params);
    return systemic_risk(snapshot, loads);
}

double percentile_nearest_rank(std::vector<double> values, double pct) {
    if (values.empty()) {
        throw DomainError("percentile: empty sample");
    }
    if (pct <= 0.0 || pct > 100.0) {
        throw DomainError("percentile: pct must be in (0, 100]");
    }
    std::sort(values.begin(), values.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(values.size())));
    return values[rank == 0 ? 0 : rank - 1];
}

std::vector<std::size_t> detect_black_swans(const RiskReport& report,
                                            double delta_pct, double tau_pct) {
    std::vector<double> degrees;
    std::vector<double> hbcs;
    for (const RiskRow& r : report.rows) {
        if (r.kind == NodeKind::User) continue;
        degrees.push_back(static_cast<double>(r.degree_phy));
        if (r.hbc) hbcs.push_back(*r.hbc);
    }
    if (degrees.empty() || hbcs.empty()) return {};
    const double degree_cut = percentile_nearest_rank(degrees, delta_pct);
    const double hbc_cut = percentile_nearest_rank(hbcs, tau_pct);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const RiskRow& r = report.rows[i];
        if (r.kind == NodeKind::User || !r.hbc) continue;
        if (static_cast<double>(r.degree_phy) < degree_cut && *r.hbc > hbc_cut) {
            out.push_back(i);
        }
    }
    return out;
}

CirValue cir(const CascadeResult& result, std::size_t n_attacked, std::size_t n_total) {
    if (n_attacked < 1 || n_total < 1) {
        throw DomainError("cir: attacked and total counts must be positive");
    }
    CirValue v;
    v.leverage = static_cast<double>(result.final_set.size()) / static_cast<double>(n_attacked);
    v.network_fraction =
        static_cast<double>(result.final_set.size()) / static_cast<double>(n_total);
    return v;
}

double pairwise_sum(const std::vector<double>& values) {
    // Recursive pairwise reduction: the grouping is fixed by the length, so
    // the result does not depend on accumulation order at call sites.
    struct Rec {
        static double sum(const double* v, std::size_t n) {
            if (n == 0) return 0.0;
            if (n <= 8) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += v[i];
                return s;
            }
            const std::size_t half = n / 2;
            return sum(v, half) + sum(v + half, n - half);
        }
    };
    return Rec::sum(values.data(), values.size());
}

}  // namespace hydra
