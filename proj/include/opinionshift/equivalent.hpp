#pragma once

#include "opinionshift/graph.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace opinionshift {

// Absolute leaders hold their party value forever; influenced leaders keep
// averaging with neighbors but feel a constant reference with weight kappa.
enum class LeaderModel { Absolute, Influenced };

inline const char* to_string(LeaderModel m) {
    return m == LeaderModel::Absolute ? "absolute" : "influenced";
}

struct LeaderConfig {
    std::vector<NodeId> s0;
    std::vector<NodeId> s1;
    LeaderModel model = LeaderModel::Absolute;
    // Per-node stubbornness; only entries for s0/s1 members matter and only in
    // the Influenced model. Empty means uniform 1.
    Vector kappa;

    static LeaderConfig absolute(std::vector<NodeId> s0, std::vector<NodeId> s1) {
        LeaderConfig cfg;
        cfg.s0 = std::move(s0);
        cfg.s1 = std::move(s1);
        cfg.model = LeaderModel::Absolute;
        cfg.normalize();
        return cfg;
    }

    static LeaderConfig influenced(std::vector<NodeId> s0, std::vector<NodeId> s1, Vector kappa) {
        LeaderConfig cfg;
        cfg.s0 = std::move(s0);
        cfg.s1 = std::move(s1);
        cfg.model = LeaderModel::Influenced;
        cfg.kappa = std::move(kappa);
        cfg.normalize();
        return cfg;
    }

    static LeaderConfig influenced_uniform(std::vector<NodeId> s0, std::vector<NodeId> s1,
                                           int node_count, double kappa_value) {
        return influenced(std::move(s0), std::move(s1),
                          Vector::Constant(node_count, kappa_value));
    }

    void normalize() {
        auto tidy = [](std::vector<NodeId>& set) {
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
        };
        tidy(s0);
        tidy(s1);
    }

    double kappa_at(NodeId v) const { return kappa.size() == 0 ? 1.0 : kappa(v); }

    bool is_leader(NodeId v) const {
        return std::binary_search(s0.begin(), s0.end(), v) ||
               std::binary_search(s1.begin(), s1.end(), v);
    }

    void validate(const WeightedDigraph& g) const {
        const int n = g.node_count();
        if (s0.empty()) throw ValidationError("leader set S0 must be nonempty");
        for (NodeId v : s0)
            if (v < 0 || v >= n) throw ValidationError("S0 node id out of range");
        for (NodeId v : s1) {
            if (v < 0 || v >= n) throw ValidationError("S1 node id out of range");
            if (std::binary_search(s0.begin(), s0.end(), v))
                throw ValidationError("S0 and S1 must be disjoint (node '" + g.label(v) + "')");
        }
        if (model == LeaderModel::Influenced) {
            if (kappa.size() != 0 && kappa.size() != n)
                throw ValidationError("kappa vector size does not match node count");
            auto check = [&](NodeId v) {
                const double k = kappa_at(v);
                if (!(k > 0.0) || !std::isfinite(k))
                    throw ValidationError("kappa must be positive at leader '" + g.label(v) + "'");
            };
            for (NodeId v : s0) check(v);
            for (NodeId v : s1) check(v);
        }
    }

    std::vector<NodeId> followers(int node_count) const {
        std::vector<NodeId> f;
        f.reserve(node_count);
        for (NodeId v = 0; v < node_count; ++v)
            if (!is_leader(v)) f.push_back(v);
        return f;
    }
};

// Leader-equivalent graph: each party reduced to one absolute leader. The
// Absolute model contracts each party to a single node; the Influenced model
// keeps all originals and adds two virtual leaders tied to their party with
// weight kappa in both directions (the back-edges carry no dynamics, they
// keep the graph strongly connected).
struct EquivalentGraph {
    WeightedDigraph graph;
    NodeId s0_id = -1;
    NodeId s1_id = -1;
    // original node id -> node id in `graph`
    std::vector<NodeId> origin_map;
};

namespace detail {
inline std::string unique_label(const std::vector<std::string>& taken, std::string want) {
    while (std::find(taken.begin(), taken.end(), want) != taken.end()) want += "+";
    return want;
}
}  // namespace detail

inline EquivalentGraph build_equivalent(const WeightedDigraph& g, const LeaderConfig& cfg) {
    cfg.validate(g);
    if (cfg.s1.empty())
        throw ValidationError("S1 must be nonempty to build the leader-equivalent graph");
    const int n = g.node_count();

    if (cfg.model == LeaderModel::Absolute) {
        const std::vector<NodeId> followers = cfg.followers(n);
        const int nf = static_cast<int>(followers.size());
        const NodeId s0_id = nf;
        const NodeId s1_id = nf + 1;
        std::vector<NodeId> origin_map(n, -1);
        std::vector<std::string> labels;
        labels.reserve(nf + 2);
        for (int i = 0; i < nf; ++i) {
            origin_map[followers[i]] = i;
            labels.push_back(g.label(followers[i]));
        }
        for (NodeId v : cfg.s0) origin_map[v] = s0_id;
        for (NodeId v : cfg.s1) origin_map[v] = s1_id;
        labels.push_back(detail::unique_label(labels, "s0'"));
        labels.push_back(detail::unique_label(labels, "s1'"));

        // Full quotient: map every edge, drop the self-loops created inside a
        // merged party, let construction sum the parallels (the w' rule).
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (const Edge& e : g.out_edges(u)) {
                const NodeId mu = origin_map[u], mv = origin_map[e.target];
                if (mu != mv) edges.push_back({mu, mv, e.weight});
            }
        return EquivalentGraph{
            WeightedDigraph::from_edges(nf + 2, std::move(edges), std::move(labels)), s0_id,
            s1_id, std::move(origin_map)};
    }

    const NodeId s0_id = n;
    const NodeId s1_id = n + 1;
    std::vector<NodeId> origin_map(n);
    for (int v = 0; v < n; ++v) origin_map[v] = v;
    std::vector<std::string> labels = g.labels();
    labels.push_back(detail::unique_label(labels, "s0'"));
    labels.push_back(detail::unique_label(labels, "s1'"));

    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (const Edge& e : g.out_edges(u)) edges.push_back(e);
    for (NodeId v : cfg.s0) {
        edges.push_back({v, s0_id, cfg.kappa_at(v)});
        edges.push_back({s0_id, v, cfg.kappa_at(v)});
    }
    for (NodeId v : cfg.s1) {
        edges.push_back({v, s1_id, cfg.kappa_at(v)});
        edges.push_back({s1_id, v, cfg.kappa_at(v)});
    }
    return EquivalentGraph{
        WeightedDigraph::from_edges(n + 2, std::move(edges), std::move(labels)), s0_id, s1_id,
        std::move(origin_map)};
}

}  // namespace opinionshift
