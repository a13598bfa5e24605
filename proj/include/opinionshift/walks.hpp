#pragma once

#include "opinionshift/common.hpp"
#include "opinionshift/graph.hpp"
#include "opinionshift/numerics.hpp"
#include "opinionshift/rng.hpp"
#include "opinionshift/threading.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace opinionshift {

namespace detail {
// W = A^T D^{-1}: column v holds the out-distribution of a walker at v.
inline Matrix transition_matrix(const WeightedDigraph& g) {
    const int n = g.node_count();
    Matrix w = Matrix::Zero(n, n);
    for (int v = 0; v < n; ++v) {
        const double d = g.out_weight(v);
        for (const Edge& e : g.out_edges(v)) w(e.target, v) = e.weight / d;
    }
    return w;
}

inline Vector stationary_from_transition(const Matrix& w) {
    const Eigen::Index n = w.rows();
    Matrix system = Matrix::Identity(n, n) - w;
    system.row(n - 1).setOnes();  // replaces one redundant row with 1^T pi = 1
    Vector rhs = Vector::Zero(n);
    rhs(n - 1) = 1.0;
    Vector pi = solve(system, rhs);
    const double residual = (w * pi - pi).cwiseAbs().maxCoeff();
    if (residual > 1e-10)
        throw NumericError("stationary: residual " + std::to_string(residual) + " exceeds 1e-10");
    for (Eigen::Index v = 0; v < n; ++v)
        if (!(pi(v) > 0.0)) throw NumericError("stationary: non-positive entry");
    return pi;
}
}  // namespace detail

// Stationary distribution of the out-weight random walk.
inline Vector stationary(const WeightedDigraph& g) {
    if (!is_strongly_connected(g))
        throw ValidationError("stationary: graph must be strongly connected");
    if (g.node_count() < 2)
        throw ValidationError("stationary: walk undefined on a single node");
    return detail::stationary_from_transition(detail::transition_matrix(g));
}

// Immutable random-walk analytics bundle for one strongly connected graph:
// transition matrix W, stationary pi, scriptL = Pi(I - W^T), scriptR =
// (I - W^T)^dagger Pi^{-1}, and the pseudoinverse of scriptL. Everything is
// computed up front (two SVDs), so sharing across threads is safe.
class WalkKernel {
public:
    explicit WalkKernel(const WeightedDigraph& g) : graph_(&g) {
        if (!is_strongly_connected(g))
            throw ValidationError("WalkKernel: graph must be strongly connected");
        if (g.node_count() < 2)
            throw ValidationError("WalkKernel: walk undefined on a single node");
        const int n = g.node_count();
        w_ = detail::transition_matrix(g);
        pi_ = detail::stationary_from_transition(w_);
        const Matrix i_minus_wt = Matrix::Identity(n, n) - w_.transpose();
        script_l_ = pi_.asDiagonal() * i_minus_wt;
        script_r_ = pinv(i_minus_wt) * pi_.cwiseInverse().asDiagonal();
        script_l_pinv_ = pinv(script_l_);
    }

    const WeightedDigraph& graph() const { return *graph_; }
    const Matrix& transition() const { return w_; }
    const Vector& stationary_distribution() const { return pi_; }
    const Matrix& script_l() const { return script_l_; }
    const Matrix& script_r() const { return script_r_; }
    const Matrix& script_l_pinv() const { return script_l_pinv_; }

private:
    const WeightedDigraph* graph_;
    Matrix w_;
    Vector pi_;
    Matrix script_l_;
    Matrix script_r_;
    Matrix script_l_pinv_;
};

// Expected number of steps for a walk started at v to first reach u
// (0 when u == v by convention). Evaluates b_{v,u}^T scriptR (pi - e_u).
inline double hitting_time(const WalkKernel& k, NodeId u, NodeId v) {
    const int n = k.graph().node_count();
    if (u < 0 || u >= n || v < 0 || v >= n) throw ValidationError("hitting_time: bad node id");
    if (u == v) return 0.0;
    Vector rhs = k.stationary_distribution();
    rhs(u) -= 1.0;
    const Vector z = k.script_r() * rhs;
    return z(v) - z(u);
}

// C_{u,v} = H_{u,v} + H_{v,u} = b_{u,v}^T scriptR b_{u,v}.
inline double commute_time(const WalkKernel& k, NodeId u, NodeId v) {
    const int n = k.graph().node_count();
    if (u < 0 || u >= n || v < 0 || v >= n) throw ValidationError("commute_time: bad node id");
    if (u == v) return 0.0;
    Vector b = Vector::Zero(n);
    b(u) = 1.0;
    b(v) = -1.0;
    return b.dot(k.script_r() * b);
}

// Electrical effective resistance from the Laplacian pseudoinverse.
inline double effective_resistance(const Matrix& l_pinv, NodeId u, NodeId v) {
    return l_pinv(u, u) - 2.0 * l_pinv(v, u) + l_pinv(v, v);
}

inline double effective_resistance(const WeightedDigraph& g, NodeId u, NodeId v) {
    if (!g.is_symmetric())
        throw ValidationError("effective_resistance: defined for undirected graphs only");
    if (!is_strongly_connected(g))
        throw ValidationError("effective_resistance: graph must be connected");
    const int n = g.node_count();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw ValidationError("effective_resistance: bad node id");
    return effective_resistance(pinv(g.laplacian()), u, v);
}

// theta(u) = n / sum_v R_{u,v}, computed from the closed form
// sum_v R_{u,v} = n (L^dagger)_{uu} + tr(L^dagger).
inline Vector information_centrality_all(const WeightedDigraph& g) {
    if (!g.is_symmetric())
        throw ValidationError("information_centrality: defined for undirected graphs only");
    if (!is_strongly_connected(g))
        throw ValidationError("information_centrality: graph must be connected");
    const Matrix l_pinv = pinv(g.laplacian());
    const double trace = l_pinv.trace();
    const double n = static_cast<double>(g.node_count());
    Vector theta(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) theta(u) = n / (n * l_pinv(u, u) + trace);
    return theta;
}

inline double information_centrality(const WeightedDigraph& g, NodeId u) {
    if (u < 0 || u >= g.node_count())
        throw ValidationError("information_centrality: bad node id");
    return information_centrality_all(g)(u);
}

// Domination score D_{u,v} = (scriptL^dagger)_{vv} - (scriptL^dagger)_{vu}.
inline double domination_score(const WalkKernel& k, NodeId u, NodeId v) {
    const int n = k.graph().node_count();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw ValidationError("domination_score: bad node id");
    if (u == v) return 0.0;
    return k.script_l_pinv()(v, v) - k.script_l_pinv()(v, u);
}

// Walk with absorbing parties S0 (value 0) and S1 (value 1); followers move
// by out-weight proportional sampling until absorbed.
class AbsorbingChain {
public:
    AbsorbingChain(const WeightedDigraph& g, std::vector<NodeId> s0, std::vector<NodeId> s1)
        : graph_(&g), s0_(std::move(s0)), s1_(std::move(s1)) {
        const int n = g.node_count();
        std::sort(s0_.begin(), s0_.end());
        std::sort(s1_.begin(), s1_.end());
        if (s0_.empty() && s1_.empty())
            throw ValidationError("AbsorbingChain: absorbing sets are empty");
        if (!is_strongly_connected(g))
            throw ValidationError("AbsorbingChain: graph must be strongly connected");
        party_.assign(n, -1);
        for (NodeId v : s0_) {
            if (v < 0 || v >= n) throw ValidationError("AbsorbingChain: S0 id out of range");
            party_[v] = 0;
        }
        for (NodeId v : s1_) {
            if (v < 0 || v >= n) throw ValidationError("AbsorbingChain: S1 id out of range");
            if (party_[v] == 0)
                throw ValidationError("AbsorbingChain: S0 and S1 overlap at '" + g.label(v) + "'");
            party_[v] = 1;
        }
        for (NodeId v = 0; v < n; ++v)
            if (party_[v] < 0) followers_.push_back(v);
        // Cumulative out-weights for inversion sampling.
        cums_.resize(n);
        targets_.resize(n);
        for (NodeId v = 0; v < n; ++v) {
            double acc = 0.0;
            for (const Edge& e : g.out_edges(v)) {
                acc += e.weight;
                cums_[v].push_back(acc);
                targets_[v].push_back(e.target);
            }
        }
    }

    const WeightedDigraph& graph() const { return *graph_; }
    const std::vector<NodeId>& followers() const { return followers_; }
    const std::vector<NodeId>& s0() const { return s0_; }
    const std::vector<NodeId>& s1() const { return s1_; }
    int party(NodeId v) const { return party_.at(v); }

    // R = D_FF^{-1} A_{F,S} with S columns ordered S0 then S1.
    Matrix r_matrix() const {
        Matrix r(followers_.size(), s0_.size() + s1_.size());
        for (std::size_t i = 0; i < followers_.size(); ++i) {
            const NodeId v = followers_[i];
            const double d = graph_->out_weight(v);
            for (std::size_t j = 0; j < s0_.size(); ++j) r(i, j) = graph_->weight(v, s0_[j]) / d;
            for (std::size_t j = 0; j < s1_.size(); ++j)
                r(i, s0_.size() + j) = graph_->weight(v, s1_[j]) / d;
        }
        return r;
    }

    // Q = D_FF^{-1} A_{F,F}.
    Matrix q_matrix() const {
        Matrix q(followers_.size(), followers_.size());
        for (std::size_t i = 0; i < followers_.size(); ++i) {
            const NodeId v = followers_[i];
            const double d = graph_->out_weight(v);
            for (std::size_t j = 0; j < followers_.size(); ++j)
                q(i, j) = graph_->weight(v, followers_[j]) / d;
        }
        return q;
    }

    // One absorption walk from v; returns the absorbing party (0 or 1).
    int walk(NodeId v, SplitMix64& rng) const {
        NodeId x = v;
        while (party_[x] < 0) {
            const auto& cum = cums_[x];
            const double draw = rng.next_double() * cum.back();
            const auto it = std::upper_bound(cum.begin(), cum.end(), draw);
            const std::size_t idx =
                std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
            x = targets_[x][idx];
        }
        return party_[x];
    }

private:
    const WeightedDigraph* graph_;
    std::vector<NodeId> s0_;
    std::vector<NodeId> s1_;
    std::vector<NodeId> followers_;
    std::vector<int> party_;
    std::vector<std::vector<double>> cums_;
    std::vector<std::vector<NodeId>> targets_;
};

// Monte-Carlo estimate of p_v(S1, -S0) = Pr[absorbed by S1 before S0] with
// its standard error. Trial t draws its own substream of `seed`, so results
// do not depend on the worker count.
inline std::pair<double, double> escape_probability_mc(const AbsorbingChain& chain, NodeId v,
                                                       std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("escape_probability_mc: trials must be >= 1");
    if (v < 0 || v >= chain.graph().node_count())
        throw ValidationError("escape_probability_mc: bad node id");
    if (chain.party(v) >= 0)
        throw ValidationError("escape_probability_mc: start node is absorbing");
    std::atomic<std::int64_t> hits{0};
    parallel_for_blocks(trials, 8192, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t local = 0;
        for (std::int64_t t = begin; t < end; ++t) {
            SplitMix64 rng = substream(seed, "walk", static_cast<std::uint64_t>(t));
            local += chain.walk(v, rng);
        }
        hits.fetch_add(local, std::memory_order_relaxed);
    });
    const double estimate = static_cast<double>(hits.load()) / static_cast<double>(trials);
    const double stderr_ = std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
    return {estimate, stderr_};
}

}  // namespace opinionshift
