#pragma once

#include "opinionshift/common.hpp"
#include "opinionshift/equivalent.hpp"
#include "opinionshift/graph.hpp"
#include "opinionshift/numerics.hpp"
#include "opinionshift/rng.hpp"
#include "opinionshift/walks.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace opinionshift {

struct SteadyState {
    Vector x_hat;  // over original nodes, values in [0, 1]
    double mu = 0.0;
    LeaderModel model = LeaderModel::Absolute;
    LeaderConfig config;
};

namespace detail {
inline void clamp_unit(Vector& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::min(1.0, std::max(0.0, x(i)));
}
}  // namespace detail

// Absolute model: leaders pinned to 0/1, follower block solved from
// L_FF x_F = A_{F,S1} 1. An empty S1 yields the all-zero state by the
// documented convention (all walkers absorbed at S0), so mu(empty) = 0.
inline SteadyState steady_state_absolute(const WeightedDigraph& g, std::vector<NodeId> s0,
                                         std::vector<NodeId> s1) {
    LeaderConfig cfg = LeaderConfig::absolute(std::move(s0), std::move(s1));
    cfg.validate(g);
    if (!is_strongly_connected(g))
        throw ValidationError("steady_state_absolute: graph must be strongly connected");
    const int n = g.node_count();
    SteadyState ss;
    ss.model = LeaderModel::Absolute;
    ss.x_hat = Vector::Zero(n);
    for (NodeId v : cfg.s1) ss.x_hat(v) = 1.0;
    if (!cfg.s1.empty()) {
        const std::vector<NodeId> followers = cfg.followers(n);
        const int nf = static_cast<int>(followers.size());
        if (nf > 0) {
            const Matrix l = g.laplacian();
            Matrix l_ff(nf, nf);
            for (int i = 0; i < nf; ++i)
                for (int j = 0; j < nf; ++j) l_ff(i, j) = l(followers[i], followers[j]);
            Vector rhs = Vector::Zero(nf);
            for (int i = 0; i < nf; ++i)
                for (const Edge& e : g.out_edges(followers[i]))
                    if (std::binary_search(cfg.s1.begin(), cfg.s1.end(), e.target))
                        rhs(i) += e.weight;
            const Vector x_f = solve(l_ff, rhs);
            for (int i = 0; i < nf; ++i) ss.x_hat(followers[i]) = x_f(i);
        }
    }
    detail::clamp_unit(ss.x_hat);
    ss.mu = ss.x_hat.mean();
    ss.config = std::move(cfg);
    return ss;
}

// Influenced model: x_hat = (L + E^S K)^{-1} E^{S1} K 1 over all nodes.
inline SteadyState steady_state_influenced(const WeightedDigraph& g, const LeaderConfig& cfg) {
    if (cfg.model != LeaderModel::Influenced)
        throw ValidationError("steady_state_influenced: config model must be Influenced");
    cfg.validate(g);
    if (!is_strongly_connected(g))
        throw ValidationError("steady_state_influenced: graph must be strongly connected");
    const int n = g.node_count();
    Matrix system = g.laplacian();
    for (NodeId v : cfg.s0) system(v, v) += cfg.kappa_at(v);
    for (NodeId v : cfg.s1) system(v, v) += cfg.kappa_at(v);
    Vector rhs = Vector::Zero(n);
    for (NodeId v : cfg.s1) rhs(v) = cfg.kappa_at(v);
    SteadyState ss;
    ss.model = LeaderModel::Influenced;
    ss.x_hat = solve(system, rhs);
    detail::clamp_unit(ss.x_hat);
    ss.mu = ss.x_hat.mean();
    ss.config = cfg;
    return ss;
}

inline SteadyState steady_state(const WeightedDigraph& g, const LeaderConfig& cfg) {
    return cfg.model == LeaderModel::Absolute ? steady_state_absolute(g, cfg.s0, cfg.s1)
                                              : steady_state_influenced(g, cfg);
}

// Steady state through the leader-equivalent graph:
// x_hat_v = b_{v,s0'}^T scriptR b_{s1',s0'} / b_{s1',s0'}^T scriptR b_{s1',s0'}.
// Returned over the *original* node ids via eq.origin_map, so it is directly
// comparable with the linear-solve routes.
inline Vector steady_state_via_walk_kernel(const EquivalentGraph& eq) {
    if (eq.s0_id == eq.s1_id)
        throw ValidationError("steady_state_via_walk_kernel: degenerate leader pair");
    const WalkKernel kernel(eq.graph);
    const int m = eq.graph.node_count();
    Vector b = Vector::Zero(m);
    b(eq.s1_id) = 1.0;
    b(eq.s0_id) = -1.0;
    const Vector z = kernel.script_r() * b;
    const double denom = z(eq.s1_id) - z(eq.s0_id);
    if (!(std::abs(denom) > kPivotTol))
        throw NumericError("steady_state_via_walk_kernel: denominator vanishes");
    Vector out(static_cast<Eigen::Index>(eq.origin_map.size()));
    for (std::size_t v = 0; v < eq.origin_map.size(); ++v)
        out(static_cast<Eigen::Index>(v)) = (z(eq.origin_map[v]) - z(eq.s0_id)) / denom;
    return out;
}

// Linear system x' = a x + c covering both models (absolute leaders get a
// zero row, so their initial value persists).
struct OpinionSystem {
    Matrix a;
    Vector c;
};

inline OpinionSystem make_system(const WeightedDigraph& g, const LeaderConfig& cfg) {
    cfg.validate(g);
    const int n = g.node_count();
    OpinionSystem sys;
    sys.a = -g.laplacian();
    sys.c = Vector::Zero(n);
    if (cfg.model == LeaderModel::Absolute) {
        for (NodeId v : cfg.s0) sys.a.row(v).setZero();
        for (NodeId v : cfg.s1) sys.a.row(v).setZero();
    } else {
        for (NodeId v : cfg.s0) sys.a(v, v) -= cfg.kappa_at(v);
        for (NodeId v : cfg.s1) {
            sys.a(v, v) -= cfg.kappa_at(v);
            sys.c(v) = cfg.kappa_at(v);
        }
    }
    return sys;
}

struct Trajectory {
    std::vector<double> times;
    Matrix states;  // row i = state at times[i]
};

// Classical fixed-step fourth-order Runge-Kutta; horizon rounded to a whole
// number of steps. Verification aid only, so no adaptive control.
inline Trajectory integrate_transient(const OpinionSystem& sys, Vector x0, double horizon,
                                      double step) {
    if (!(step > 0.0)) throw ValidationError("integrate_transient: step must be positive");
    if (!(horizon > 0.0)) throw ValidationError("integrate_transient: horizon must be positive");
    if (x0.size() != sys.a.rows())
        throw ValidationError("integrate_transient: state size mismatch");
    const std::int64_t steps = std::max<std::int64_t>(1, std::llround(horizon / step));
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.resize(steps + 1, x0.size());
    Vector x = std::move(x0);
    traj.times.push_back(0.0);
    traj.states.row(0) = x.transpose();
    auto f = [&](const Vector& y) -> Vector { return sys.a * y + sys.c; };
    for (std::int64_t i = 1; i <= steps; ++i) {
        const Vector k1 = f(x);
        const Vector k2 = f(x + (step / 2.0) * k1);
        const Vector k3 = f(x + (step / 2.0) * k2);
        const Vector k4 = f(x + step * k3);
        x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite())
            throw NumericError("integrate_transient: state diverged (step too large)");
        traj.times.push_back(static_cast<double>(i) * step);
        traj.states.row(i) = x.transpose();
    }
    return traj;
}

// One Bernoulli participation draw: X_v ~ Bernoulli(x_hat_v) independently,
// returns the participating fraction.
inline double sample_participation(const SteadyState& ss, std::uint64_t seed) {
    SplitMix64 rng = substream(seed, "participation");
    double count = 0.0;
    for (Eigen::Index v = 0; v < ss.x_hat.size(); ++v)
        if (rng.next_double() < ss.x_hat(v)) count += 1.0;
    return count / static_cast<double>(ss.x_hat.size());
}

}  // namespace opinionshift
