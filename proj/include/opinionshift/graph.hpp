#pragma once

#include "opinionshift/common.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace opinionshift {

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    double weight = 1.0;
};

// How parallel edges combine at construction. Sum is the default throughout;
// KeepFirst exists for datasets where repeated lines mean duplicate records
// rather than accumulated weight (CLI --dedupe).
enum class MergePolicy { Sum, KeepFirst };

// Immutable weighted digraph with dense internal ids 0..n-1 and retained
// external labels. Positive weights only, no self-loops, parallel edges
// merged at construction. Undirected graphs are stored bidirectionally.
class WeightedDigraph {
public:
    static WeightedDigraph from_edges(int node_count, std::vector<Edge> edges,
                                      std::vector<std::string> labels = {},
                                      MergePolicy policy = MergePolicy::Sum) {
        if (node_count <= 0) throw ValidationError("graph needs at least one node");
        WeightedDigraph g;
        g.n_ = node_count;
        if (labels.empty()) {
            labels.reserve(node_count);
            for (int v = 0; v < node_count; ++v) labels.push_back(std::to_string(v));
        }
        if (static_cast<int>(labels.size()) != node_count)
            throw ValidationError("label list size does not match node count");
        g.labels_ = std::move(labels);
        for (int v = 0; v < node_count; ++v) {
            if (!g.label_to_id_.emplace(g.labels_[v], v).second)
                throw ValidationError("duplicate node label '" + g.labels_[v] + "'");
        }

        for (const Edge& e : edges) {
            if (e.source < 0 || e.source >= node_count || e.target < 0 || e.target >= node_count)
                throw ValidationError("edge endpoint out of range");
            if (e.source == e.target)
                throw ValidationError("self-loop rejected at node '" + g.labels_[e.source] + "'");
            if (!(e.weight > 0.0) || !std::isfinite(e.weight))
                throw ValidationError("non-positive weight on edge '" + g.labels_[e.source] +
                                      "' -> '" + g.labels_[e.target] + "'");
        }

        // Merge parallels: stable sort keeps input order inside each (u,v) run
        // so KeepFirst picks the first occurrence.
        std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.source, a.target) < std::tie(b.source, b.target);
        });
        g.out_.resize(node_count);
        g.in_.resize(node_count);
        g.out_weight_.assign(node_count, 0.0);
        for (std::size_t i = 0; i < edges.size();) {
            Edge merged = edges[i];
            std::size_t j = i + 1;
            while (j < edges.size() && edges[j].source == merged.source &&
                   edges[j].target == merged.target) {
                if (policy == MergePolicy::Sum) merged.weight += edges[j].weight;
                ++j;
            }
            g.out_[merged.source].push_back(merged);
            g.in_[merged.target].push_back(merged);
            g.out_weight_[merged.source] += merged.weight;
            g.total_out_weight_ += merged.weight;
            ++g.edge_count_;
            i = j;
        }
        return g;
    }

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<Edge>& out_edges(NodeId v) const { return out_.at(v); }
    const std::vector<Edge>& in_edges(NodeId v) const { return in_.at(v); }

    // d_v: total weight of v's out-edges (the out-degree matrix diagonal).
    double out_weight(NodeId v) const { return out_weight_.at(v); }

    // Sum of all edge weights; equals "2m" for an undirected graph.
    double total_out_weight() const { return total_out_weight_; }

    double weight(NodeId u, NodeId v) const {
        for (const Edge& e : out_.at(u))
            if (e.target == v) return e.weight;
        return 0.0;
    }

    const std::string& label(NodeId v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<NodeId> find(const std::string& label) const {
        auto it = label_to_id_.find(label);
        if (it == label_to_id_.end()) return std::nullopt;
        return it->second;
    }

    // True iff w(u,v) == w(v,u) for every edge, i.e. the graph is a
    // bidirectional representation of an undirected graph.
    bool is_symmetric() const {
        for (int u = 0; u < n_; ++u)
            for (const Edge& e : out_[u])
                if (weight(e.target, u) != e.weight) return false;
        return true;
    }

    Matrix adjacency() const {
        Matrix a = Matrix::Zero(n_, n_);
        for (int u = 0; u < n_; ++u)
            for (const Edge& e : out_[u]) a(u, e.target) = e.weight;
        return a;
    }

    // L = D - A with D the diagonal out-weight matrix.
    Matrix laplacian() const {
        Matrix l = -adjacency();
        for (int v = 0; v < n_; ++v) l(v, v) = out_weight_[v];
        return l;
    }

private:
    WeightedDigraph() = default;

    int n_ = 0;
    std::size_t edge_count_ = 0;
    double total_out_weight_ = 0.0;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<Edge>> in_;
    std::vector<double> out_weight_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_to_id_;
};

// Parses "u v [w]" lines; '#' starts a comment, labels are arbitrary tokens
// mapped to dense ids in order of first appearance. With `undirected` every
// edge is mirrored before merging.
inline WeightedDigraph load_edge_list(std::istream& text, bool undirected,
                                      MergePolicy policy = MergePolicy::Sum) {
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    auto intern = [&](const std::string& token) {
        auto it = ids.find(token);
        if (it != ids.end()) return it->second;
        const NodeId id = static_cast<NodeId>(labels.size());
        ids.emplace(token, id);
        labels.push_back(token);
        return id;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(text, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string u, v;
        if (!(fields >> u)) continue;  // blank or comment-only line
        if (!(fields >> v))
            throw ValidationError("line " + std::to_string(line_no) + ": expected 'u v [w]'");
        double w = 1.0;
        std::string weight_token, extra;
        if (fields >> weight_token) {
            std::size_t used = 0;
            try {
                w = std::stod(weight_token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != weight_token.size())
                throw ValidationError("line " + std::to_string(line_no) + ": bad weight '" +
                                      weight_token + "'");
            if (fields >> extra)
                throw ValidationError("line " + std::to_string(line_no) + ": trailing field '" +
                                      extra + "'");
        }
        if (!(w > 0.0) || !std::isfinite(w))
            throw ValidationError("line " + std::to_string(line_no) + ": non-positive weight");
        const NodeId a = intern(u), b = intern(v);
        if (a == b)
            throw ValidationError("line " + std::to_string(line_no) + ": self-loop at node '" +
                                  u + "'");
        edges.push_back({a, b, w});
        if (undirected) edges.push_back({b, a, w});
    }
    if (labels.empty()) throw ValidationError("edge list contains no edges");
    const int node_count = static_cast<int>(labels.size());
    return WeightedDigraph::from_edges(node_count, std::move(edges), std::move(labels), policy);
}

// Strong connectivity via forward and backward reachability from node 0.
inline bool is_strongly_connected(const WeightedDigraph& g) {
    const int n = g.node_count();
    if (n == 1) return true;
    auto sweep = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::deque<NodeId> frontier{0};
        seen[0] = 1;
        int count = 1;
        while (!frontier.empty()) {
            const NodeId v = frontier.front();
            frontier.pop_front();
            const auto& edges = forward ? g.out_edges(v) : g.in_edges(v);
            for (const Edge& e : edges) {
                const NodeId next = forward ? e.target : e.source;
                if (!seen[next]) {
                    seen[next] = 1;
                    ++count;
                    frontier.push_back(next);
                }
            }
        }
        return count == n;
    };
    return sweep(true) && sweep(false);
}

// Star-plus-cubic hardness gadget: a new center joined to every node of a
// connected 3-regular unit-weight graph with `star_weight` (3 in the
// construction this mirrors). Returns the gadget and the center's id.
inline std::pair<WeightedDigraph, NodeId> gadget_graph(const WeightedDigraph& cubic,
                                                       double star_weight) {
    if (!(star_weight > 0.0)) throw ValidationError("star weight must be positive");
    const int nc = cubic.node_count();
    for (int v = 0; v < nc; ++v) {
        if (cubic.out_edges(v).size() != 3 || cubic.in_edges(v).size() != 3)
            throw ValidationError("gadget input must be 3-regular; node '" + cubic.label(v) +
                                  "' is not");
        for (const Edge& e : cubic.out_edges(v)) {
            if (e.weight != 1.0 || cubic.weight(e.target, v) != 1.0)
                throw ValidationError("gadget input must be undirected with unit weights");
        }
    }
    if (!is_strongly_connected(cubic)) throw ValidationError("gadget input must be connected");

    std::vector<Edge> edges;
    for (int v = 0; v < nc; ++v)
        for (const Edge& e : cubic.out_edges(v)) edges.push_back(e);
    const NodeId center = nc;
    for (int v = 0; v < nc; ++v) {
        edges.push_back({center, v, star_weight});
        edges.push_back({v, center, star_weight});
    }
    std::vector<std::string> labels = cubic.labels();
    std::string center_label = "center";
    while (std::find(labels.begin(), labels.end(), center_label) != labels.end())
        center_label += "+";
    labels.push_back(center_label);
    return {WeightedDigraph::from_edges(nc + 1, std::move(edges), std::move(labels)), center};
}

namespace detail {
inline WeightedDigraph undirected_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(2 * pairs.size());
    for (auto [u, v] : pairs) {
        edges.push_back({u, v, 1.0});
        edges.push_back({v, u, 1.0});
    }
    return WeightedDigraph::from_edges(n, std::move(edges));
}
}  // namespace detail

// Small catalog of connected cubic graphs used as gadget inputs.
inline WeightedDigraph named_cubic_graph(const std::string& name) {
    if (name == "k4") {
        return detail::undirected_from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    }
    if (name == "k33") {
        return detail::undirected_from_pairs(
            6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    }
    if (name == "prism") {
        return detail::undirected_from_pairs(6,
                                             {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
                                              {0, 3}, {1, 4}, {2, 5}});
    }
    if (name == "cube") {
        return detail::undirected_from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                                 {4, 5}, {5, 6}, {6, 7}, {7, 4},
                                                 {0, 4}, {1, 5}, {2, 6}, {3, 7}});
    }
    if (name == "petersen") {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < 5; ++i) {
            pairs.emplace_back(i, (i + 1) % 5);          // outer pentagon
            pairs.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
            pairs.emplace_back(i, 5 + i);                // spokes
        }
        return detail::undirected_from_pairs(10, pairs);
    }
    throw ValidationError("unknown cubic graph '" + name +
                          "' (known: k4, k33, prism, cube, petersen)");
}

}  // namespace opinionshift
