#pragma once

#include "opinionshift/common.hpp"
#include "opinionshift/equivalent.hpp"
#include "opinionshift/numerics.hpp"
#include "opinionshift/rng.hpp"
#include "opinionshift/walks.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opinionshift {

// Weighted-balance decomposition of f = |mu - alpha| for |S0| = |S1| = 1.
// numerator is kept signed; f = |numerator| / denominator.
struct BalanceReport {
    NodeId s0 = -1;
    NodeId s1 = -1;
    double numerator = 0.0;
    double denominator = 0.0;
    double mu = 0.0;
    double f = 0.0;
};

namespace detail {
inline void check_single_pair(const WalkKernel& k, NodeId s0, NodeId s1, double alpha) {
    const int n = k.graph().node_count();
    if (s0 < 0 || s0 >= n || s1 < 0 || s1 >= n)
        throw ValidationError("single-leader balance: node id out of range");
    if (s0 == s1) throw ValidationError("single-leader balance: s0 and s1 must differ");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("single-leader balance: alpha must lie in [0, 1]");
}
}  // namespace detail

// Absolute model: mu = D_{s1,s0} / (D_{s0,s1} + D_{s1,s0}) and
// f = |(1-alpha) D_{s1,s0} - alpha D_{s0,s1}| / (D_{s0,s1} + D_{s1,s0}).
inline BalanceReport balance_absolute(const WalkKernel& k, NodeId s0, NodeId s1, double alpha) {
    detail::check_single_pair(k, s0, s1, alpha);
    BalanceReport rep;
    rep.s0 = s0;
    rep.s1 = s1;
    const double d10 = domination_score(k, s1, s0);
    const double d01 = domination_score(k, s0, s1);
    rep.denominator = d01 + d10;
    rep.numerator = (1.0 - alpha) * d10 - alpha * d01;
    rep.mu = d10 / rep.denominator;
    rep.f = std::abs(rep.numerator) / rep.denominator;
    return rep;
}

// Influenced model adds the stubbornness terms d_s/(kappa pi_s) to each
// party's side of the balance.
inline BalanceReport balance_influenced(const WalkKernel& k, NodeId s0, NodeId s1, double kappa0,
                                        double kappa1, double alpha) {
    detail::check_single_pair(k, s0, s1, alpha);
    if (!(kappa0 > 0.0) || !(kappa1 > 0.0))
        throw ValidationError("balance_influenced: kappa must be positive");
    BalanceReport rep;
    rep.s0 = s0;
    rep.s1 = s1;
    const WeightedDigraph& g = k.graph();
    const Vector& pi = k.stationary_distribution();
    const double side0 =
        g.out_weight(s0) / (kappa0 * pi(s0)) + domination_score(k, s1, s0);
    const double side1 =
        g.out_weight(s1) / (kappa1 * pi(s1)) + domination_score(k, s0, s1);
    rep.denominator = side0 + side1;
    rep.numerator = (1.0 - alpha) * side0 - alpha * side1;
    rep.mu = side0 / rep.denominator;
    rep.f = std::abs(rep.numerator) / rep.denominator;
    return rep;
}

// alpha = 1/2 corollaries on undirected graphs, written in terms of inverse
// information centrality and effective resistance. Pass kappa for the
// influenced variant.
inline double centrality_balance(const WeightedDigraph& g, NodeId s0, NodeId s1,
                                 std::optional<std::pair<double, double>> kappa = std::nullopt) {
    if (!g.is_symmetric())
        throw ValidationError("centrality_balance: defined for undirected graphs only");
    if (!is_strongly_connected(g))
        throw ValidationError("centrality_balance: graph must be connected");
    const int n = g.node_count();
    if (s0 < 0 || s0 >= n || s1 < 0 || s1 >= n)
        throw ValidationError("centrality_balance: node id out of range");
    if (s0 == s1) throw ValidationError("centrality_balance: s0 and s1 must differ");
    const Matrix l_pinv = pinv(g.laplacian());
    const double trace = l_pinv.trace();
    auto inverse_theta = [&](NodeId v) {
        return (static_cast<double>(n) * l_pinv(v, v) + trace) / static_cast<double>(n);
    };
    const double resistance = effective_resistance(l_pinv, s0, s1);
    if (!kappa) return std::abs(inverse_theta(s0) - inverse_theta(s1)) / (2.0 * resistance);
    const auto [kappa0, kappa1] = *kappa;
    if (!(kappa0 > 0.0) || !(kappa1 > 0.0))
        throw ValidationError("centrality_balance: kappa must be positive");
    return std::abs(inverse_theta(s0) + 1.0 / kappa0 - inverse_theta(s1) - 1.0 / kappa1) /
           (2.0 * (resistance + 1.0 / kappa0 + 1.0 / kappa1));
}

enum class SingleHeuristic { Optimal, DS, ER, DSK, Random };

inline const char* to_string(SingleHeuristic h) {
    switch (h) {
        case SingleHeuristic::Optimal: return "optimal";
        case SingleHeuristic::DS: return "ds";
        case SingleHeuristic::ER: return "er";
        case SingleHeuristic::DSK: return "dsk";
        case SingleHeuristic::Random: return "random";
    }
    return "?";
}

inline SingleHeuristic single_heuristic_from_string(const std::string& name) {
    if (name == "optimal") return SingleHeuristic::Optimal;
    if (name == "ds") return SingleHeuristic::DS;
    if (name == "er") return SingleHeuristic::ER;
    if (name == "dsk") return SingleHeuristic::DSK;
    if (name == "random") return SingleHeuristic::Random;
    throw ValidationError("unknown heuristic '" + name +
                          "' (known: optimal, ds, er, dsk, random)");
}

// Picks s1 from `candidates` (default: every node but s0). Optimal minimizes
// f for the active model; DS/DSK minimize the absolute/influenced balance
// numerator; ER maximizes the balance denominator; Random draws uniformly.
// Ties break toward the smallest node id.
inline NodeId select_single(const WalkKernel& k, NodeId s0, double alpha, LeaderModel model,
                            const Vector& kappa, SingleHeuristic heuristic, std::uint64_t seed = 0,
                            const std::vector<NodeId>* candidates = nullptr) {
    const int n = k.graph().node_count();
    if (s0 < 0 || s0 >= n) throw ValidationError("select_single: bad s0");
    std::vector<NodeId> pool;
    if (candidates) {
        pool = *candidates;
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        for (NodeId v : pool)
            if (v < 0 || v >= n || v == s0)
                throw ValidationError("select_single: candidate set must avoid s0 and stay in range");
    } else {
        for (NodeId v = 0; v < n; ++v)
            if (v != s0) pool.push_back(v);
    }
    if (pool.empty()) throw ValidationError("select_single: no candidates");
    auto kappa_at = [&](NodeId v) { return kappa.size() == 0 ? 1.0 : kappa(v); };

    if (heuristic == SingleHeuristic::Random) {
        SplitMix64 rng = substream(seed, "single-random");
        return pool[rng.next_below(pool.size())];
    }

    NodeId best = pool.front();
    double best_score = std::numeric_limits<double>::infinity();
    for (NodeId v : pool) {
        BalanceReport rep;
        if (model == LeaderModel::Influenced || heuristic == SingleHeuristic::DSK)
            rep = balance_influenced(k, s0, v, kappa_at(s0), kappa_at(v), alpha);
        else
            rep = balance_absolute(k, s0, v, alpha);
        double score = 0.0;
        switch (heuristic) {
            case SingleHeuristic::Optimal: score = rep.f; break;
            case SingleHeuristic::DS:
                score = std::abs(balance_absolute(k, s0, v, alpha).numerator);
                break;
            case SingleHeuristic::DSK: score = std::abs(rep.numerator); break;
            case SingleHeuristic::ER: score = -rep.denominator; break;
            case SingleHeuristic::Random: break;  // handled above
        }
        if (score < best_score) {
            best_score = score;
            best = v;
        }
    }
    return best;
}

}  // namespace opinionshift
