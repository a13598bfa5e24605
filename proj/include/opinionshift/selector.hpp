#pragma once

#include "opinionshift/common.hpp"
#include "opinionshift/dynamics.hpp"
#include "opinionshift/equivalent.hpp"
#include "opinionshift/graph.hpp"
#include "opinionshift/numerics.hpp"
#include "opinionshift/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opinionshift {

// One instance of the leader-selection problem: pick S1 subset of Q with
// |S1| <= k moving the average opinion toward alpha.
struct SelectionProblem {
    const WeightedDigraph* graph = nullptr;  // non-owning; caller keeps it alive
    std::vector<NodeId> s0;
    std::vector<NodeId> candidates;  // Q, disjoint from s0
    double alpha = 0.5;
    int k = 1;
    LeaderModel model = LeaderModel::Absolute;
    Vector kappa;  // Influenced only; empty = uniform 1
    double delta = 1e-4;

    static SelectionProblem make(const WeightedDigraph& g, std::vector<NodeId> s0, double alpha,
                                 int k, LeaderModel model, Vector kappa = {},
                                 std::vector<NodeId> candidates = {}, double delta = 1e-4) {
        SelectionProblem p;
        p.graph = &g;
        p.s0 = std::move(s0);
        std::sort(p.s0.begin(), p.s0.end());
        p.s0.erase(std::unique(p.s0.begin(), p.s0.end()), p.s0.end());
        if (candidates.empty()) {
            for (NodeId v = 0; v < g.node_count(); ++v)
                if (!std::binary_search(p.s0.begin(), p.s0.end(), v)) candidates.push_back(v);
        }
        p.candidates = std::move(candidates);
        std::sort(p.candidates.begin(), p.candidates.end());
        p.candidates.erase(std::unique(p.candidates.begin(), p.candidates.end()),
                           p.candidates.end());
        p.alpha = alpha;
        p.k = k;
        p.model = model;
        p.kappa = std::move(kappa);
        p.delta = delta;
        p.validate();
        return p;
    }

    void validate() const {
        if (!graph) throw ValidationError("selection problem: graph not set");
        const int n = graph->node_count();
        if (s0.empty()) throw ValidationError("selection problem: S0 must be nonempty");
        for (NodeId v : s0)
            if (v < 0 || v >= n) throw ValidationError("selection problem: S0 id out of range");
        for (NodeId v : candidates) {
            if (v < 0 || v >= n)
                throw ValidationError("selection problem: candidate id out of range");
            if (std::binary_search(s0.begin(), s0.end(), v))
                throw ValidationError("selection problem: candidates must avoid S0 (node '" +
                                      graph->label(v) + "')");
        }
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw ValidationError("selection problem: alpha must lie in [0, 1]");
        if (k < 1 || k > static_cast<int>(candidates.size()))
            throw ValidationError("selection problem: need 1 <= k <= |Q|");
        if (!(delta > 0.0)) throw ValidationError("selection problem: delta must be positive");
        if (model == LeaderModel::Influenced) {
            if (kappa.size() != 0 && kappa.size() != n)
                throw ValidationError("selection problem: kappa size mismatch");
            auto check = [&](NodeId v) {
                const double value = kappa.size() == 0 ? 1.0 : kappa(v);
                if (!(value > 0.0) || !std::isfinite(value))
                    throw ValidationError("selection problem: kappa must be positive at '" +
                                          graph->label(v) + "'");
            };
            for (NodeId v : s0) check(v);
            for (NodeId v : candidates) check(v);
        }
        if (!is_strongly_connected(*graph))
            throw ValidationError("selection problem: graph must be strongly connected");
    }

    double kappa_at(NodeId v) const { return kappa.size() == 0 ? 1.0 : kappa(v); }

    LeaderConfig config_for(std::vector<NodeId> s1) const {
        if (model == LeaderModel::Absolute) return LeaderConfig::absolute(s0, std::move(s1));
        Vector full = kappa.size() == 0 ? Vector::Ones(graph->node_count()) : kappa;
        return LeaderConfig::influenced(s0, std::move(s1), std::move(full));
    }
};

namespace detail {

// Direct set-function evaluator: assembles and solves the steady-state
// system from scratch for each requested S1. No incremental state, which is
// what makes it a usable oracle for greedy_fast.
class MuEvaluator {
public:
    explicit MuEvaluator(const SelectionProblem& p)
        : p_(&p), l_(p.graph->laplacian()), in_s0_(p.graph->node_count(), 0) {
        for (NodeId v : p.s0) in_s0_[v] = 1;
    }

    double mu(const std::vector<NodeId>& s1) const {
        const int n = p_->graph->node_count();
        if (p_->model == LeaderModel::Influenced) {
            Matrix system = l_;
            for (NodeId v : p_->s0) system(v, v) += p_->kappa_at(v);
            for (NodeId v : s1) system(v, v) += p_->kappa_at(v);
            Vector rhs = Vector::Zero(n);
            for (NodeId v : s1) rhs(v) = p_->kappa_at(v);
            return solve(system, rhs).mean();
        }
        std::vector<char> leader(n, 0);
        for (NodeId v : p_->s0) leader[v] = 1;
        for (NodeId v : s1) leader[v] = 2;
        std::vector<NodeId> followers;
        followers.reserve(n);
        for (NodeId v = 0; v < n; ++v)
            if (!leader[v]) followers.push_back(v);
        const int nf = static_cast<int>(followers.size());
        double total = static_cast<double>(s1.size());
        if (nf > 0) {
            Matrix l_ff(nf, nf);
            for (int i = 0; i < nf; ++i)
                for (int j = 0; j < nf; ++j) l_ff(i, j) = l_(followers[i], followers[j]);
            Vector rhs = Vector::Zero(nf);
            for (int i = 0; i < nf; ++i)
                for (const Edge& e : p_->graph->out_edges(followers[i]))
                    if (leader[e.target] == 2) rhs(i) += e.weight;
            total += solve(l_ff, rhs).sum();
        }
        return total / static_cast<double>(n);
    }

private:
    const SelectionProblem* p_;
    Matrix l_;
    std::vector<char> in_s0_;
};

inline void check_b_hat(const SelectionProblem& p, double b_hat) {
    if (!(b_hat >= p.alpha && b_hat <= 1.0))
        throw ValidationError("greedy: upper bound must lie in [alpha, 1]");
}

// Incremental scorer for the Absolute model. Maintains M = (L_FF)^{-1} over
// the current follower set; a candidate's mu comes from inner products with
// M's row/column for that candidate (the blockwise-removal downdate applied
// implicitly), and accepted nodes shrink M by an actual removal.
class FastAbsoluteScorer {
public:
    FastAbsoluteScorer(const SelectionProblem& p, const MuEvaluator& oracle)
        : p_(&p), oracle_(&oracle), l_(p.graph->laplacian()) {
        const int n = p.graph->node_count();
        pos_.assign(n, -1);
        for (NodeId v = 0; v < n; ++v)
            if (!std::binary_search(p.s0.begin(), p.s0.end(), v)) {
                pos_[v] = static_cast<int>(followers_.size());
                followers_.push_back(v);
            }
        rebuild_inverse();
        a_p_ = Vector::Zero(followers_.size());
        refresh_products();
    }

    // mu(P + {u}); u must currently be a follower.
    double score(NodeId u) const {
        const int pos = pos_[u];
        const double pivot = m_(pos, pos);
        if (!(std::abs(pivot) > kPivotTol)) {
            // Singular pivot: re-solve this candidate from scratch.
            std::vector<NodeId> s1 = p_slist_;
            s1.push_back(u);
            std::sort(s1.begin(), s1.end());
            return oracle_->mu(s1);
        }
        double r_dot = 0.0, m_dot = 0.0;
        for (const Edge& e : p_->graph->in_edges(u)) {
            const int w = pos_[e.source];
            if (w < 0) continue;
            r_dot += r_(w) * e.weight;
            m_dot += m_(pos, w) * e.weight;
        }
        const double shifted_sum = (sum0_ + r_dot) - r_(pos) * (y_(pos) + m_dot) / pivot;
        return (static_cast<double>(p_slist_.size()) + 1.0 + shifted_sum) /
               static_cast<double>(p_->graph->node_count());
    }

    void accept(NodeId u) {
        const int pos = pos_[u];
        try {
            m_ = block_remove_inverse(m_, pos);
        } catch (const NumericError&) {
            drop_follower(u);
            p_slist_.push_back(u);
            rebuild_inverse();
            rebuild_a_p();
            refresh_products();
            return;
        }
        drop_follower(u);
        // a_P gains the accepted node's in-weights from surviving followers.
        a_p_ = drop_index(a_p_, pos);
        for (const Edge& e : p_->graph->in_edges(u)) {
            const int w = pos_[e.source];
            if (w >= 0) a_p_(w) += e.weight;
        }
        refresh_products();
        p_slist_.push_back(u);
    }

private:
    void drop_follower(NodeId u) {
        const int pos = pos_[u];
        followers_.erase(followers_.begin() + pos);
        pos_[u] = -1;
        for (std::size_t i = pos; i < followers_.size(); ++i) pos_[followers_[i]] = static_cast<int>(i);
    }

    static Vector drop_index(const Vector& x, int idx) {
        Vector out(x.size() - 1);
        out.head(idx) = x.head(idx);
        out.tail(x.size() - idx - 1) = x.tail(x.size() - idx - 1);
        return out;
    }

    void rebuild_inverse() {
        const int nf = static_cast<int>(followers_.size());
        Matrix l_ff(nf, nf);
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j) l_ff(i, j) = l_(followers_[i], followers_[j]);
        m_ = invert(l_ff);
    }

    void rebuild_a_p() {
        a_p_ = Vector::Zero(followers_.size());
        for (std::size_t i = 0; i < followers_.size(); ++i)
            for (const Edge& e : p_->graph->out_edges(followers_[i]))
                if (std::find(p_slist_.begin(), p_slist_.end(), e.target) != p_slist_.end())
                    a_p_(i) += e.weight;
    }

    void refresh_products() {
        y_ = m_ * a_p_;
        r_ = m_.transpose() * Vector::Ones(m_.rows());
        sum0_ = y_.sum();
    }

    const SelectionProblem* p_;
    const MuEvaluator* oracle_;
    Matrix l_;
    std::vector<NodeId> followers_;
    std::vector<int> pos_;
    std::vector<NodeId> p_slist_;  // accepted so far, acceptance order
    Matrix m_;
    Vector a_p_;
    Vector y_;
    Vector r_;
    double sum0_ = 0.0;
};

// Incremental scorer for the Influenced model: Sherman-Morrison on
// N = (L + E^S K)^{-1}, O(1) per candidate.
class FastInfluencedScorer {
public:
    FastInfluencedScorer(const SelectionProblem& p, const MuEvaluator& oracle)
        : p_(&p), oracle_(&oracle) {
        const int n = p.graph->node_count();
        system_ = p.graph->laplacian();
        for (NodeId v : p.s0) system_(v, v) += p.kappa_at(v);
        n_ = invert(system_);
        c_ = Vector::Zero(n);
        refresh_products();
    }

    double score(NodeId u) const {
        const double kappa_u = p_->kappa_at(u);
        const double denom = 1.0 + kappa_u * n_(u, u);
        if (!(std::abs(denom) > kPivotTol)) {
            std::vector<NodeId> s1 = p_slist_;
            s1.push_back(u);
            std::sort(s1.begin(), s1.end());
            return oracle_->mu(s1);
        }
        const double shifted_sum =
            sum0_ + kappa_u * r_(u) - kappa_u * r_(u) * (y_(u) + kappa_u * n_(u, u)) / denom;
        return shifted_sum / static_cast<double>(p_->graph->node_count());
    }

    void accept(NodeId u) {
        const double kappa_u = p_->kappa_at(u);
        const double denom = 1.0 + kappa_u * n_(u, u);
        system_(u, u) += kappa_u;
        if (!(std::abs(denom) > kPivotTol)) {
            n_ = invert(system_);
        } else {
            const Vector col = n_.col(u);
            const Eigen::RowVectorXd row = n_.row(u);
            n_.noalias() -= (kappa_u / denom) * col * row;
        }
        c_(u) += kappa_u;
        p_slist_.push_back(u);
        refresh_products();
    }

private:
    void refresh_products() {
        y_ = n_ * c_;
        r_ = n_.transpose() * Vector::Ones(n_.rows());
        sum0_ = y_.sum();
    }

    const SelectionProblem* p_;
    const MuEvaluator* oracle_;
    Matrix system_;
    Matrix n_;
    Vector c_;
    std::vector<NodeId> p_slist_;
    Vector y_;
    Vector r_;
    double sum0_ = 0.0;
};

// Shared greedy skeleton; Score(u) evaluates mu(P + {u}) for the current P,
// Accept(u) commits it. The argmax candidate leaves Q whether accepted or
// not, and scores are only stale after an acceptance. Candidates whose
// scores agree to within kTieBand are treated as tied and the smallest id
// wins, so the incremental scorers' last-bit rounding cannot flip a pick
// away from the full-solve route.
template <typename Score, typename Accept>
std::pair<std::vector<NodeId>, double> greedy_loop(const SelectionProblem& p, double b_hat,
                                                   Score&& score, Accept&& accept) {
    constexpr double kTieBand = 1e-12;  // mu lives in [0, 1]
    std::vector<NodeId> pool = p.candidates;
    std::vector<double> cached(pool.size());
    bool stale = true;
    std::vector<NodeId> chosen;
    double mu_p = 0.0;
    while (!pool.empty() && static_cast<int>(chosen.size()) < p.k) {
        if (stale) {
            for (std::size_t i = 0; i < pool.size(); ++i) cached[i] = score(pool[i]);
            stale = false;
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < pool.size(); ++i)
            if (cached[i] > cached[best] + kTieBand) best = i;  // ids ascend within the pool
        const NodeId s = pool[best];
        const double mu_s = cached[best];
        if (mu_s <= b_hat) {
            accept(s);
            chosen.push_back(s);
            mu_p = mu_s;
            stale = true;
        }
        pool.erase(pool.begin() + best);
        cached.erase(cached.begin() + best);
    }
    std::sort(chosen.begin(), chosen.end());
    return {std::move(chosen), mu_p};
}

}  // namespace detail

// Reference greedy: every candidate evaluated by a full steady-state solve.
inline std::pair<std::vector<NodeId>, double> greedy(const SelectionProblem& p, double b_hat) {
    p.validate();
    detail::check_b_hat(p, b_hat);
    const detail::MuEvaluator eval(p);
    std::vector<NodeId> current;
    return detail::greedy_loop(
        p, b_hat,
        [&](NodeId u) {
            std::vector<NodeId> s1 = current;
            s1.insert(std::lower_bound(s1.begin(), s1.end(), u), u);
            return eval.mu(s1);
        },
        [&](NodeId u) { current.insert(std::lower_bound(current.begin(), current.end(), u), u); });
}

// Incremental greedy; contract identical to greedy() including tie-breaks.
inline std::pair<std::vector<NodeId>, double> greedy_fast(const SelectionProblem& p,
                                                          double b_hat) {
    p.validate();
    detail::check_b_hat(p, b_hat);
    const detail::MuEvaluator oracle(p);
    if (p.model == LeaderModel::Absolute) {
        detail::FastAbsoluteScorer scorer(p, oracle);
        return detail::greedy_loop(
            p, b_hat, [&](NodeId u) { return scorer.score(u); },
            [&](NodeId u) { scorer.accept(u); });
    }
    detail::FastInfluencedScorer scorer(p, oracle);
    return detail::greedy_loop(
        p, b_hat, [&](NodeId u) { return scorer.score(u); },
        [&](NodeId u) { scorer.accept(u); });
}

struct BoundSearchStep {
    double b_hat = 0.0;
    double mu = 0.0;
    bool accepted = false;
};

struct SelectionResult {
    std::vector<NodeId> s1;
    double mu = 0.0;
    double f = 0.0;
    std::vector<BoundSearchStep> trace;
    int iterations = 0;
};

// Raised when the Continue path keeps firing past the invocation cap; the
// partial result (best set so far plus full trace) rides along.
class BoundSearchOverrun : public NumericError {
public:
    BoundSearchOverrun(const std::string& msg, SelectionResult partial)
        : NumericError(msg), partial_result(std::move(partial)) {}
    SelectionResult partial_result;
};

// Bisection on the greedy upper bound b: runs Greedy at b_hat, keeps the
// best |mu - alpha| seen, and narrows [b_min, b_max] until the ratio drops
// under e^delta. Deterministic; every Greedy invocation lands in the trace.
inline SelectionResult bound_search(const SelectionProblem& p) {
    p.validate();
    SelectionResult result;
    if (p.alpha == 0.0) {
        // mu(empty) = 0 = alpha exactly; the b_max/b_min ratio test is
        // undefined at alpha = 0, so answer directly.
        return result;
    }
    const double exp_delta = std::exp(p.delta);
    const int call_cap = std::max(
        64, 64 * static_cast<int>(std::ceil(std::log2(std::max(2.0, 1.0 / p.delta)))));
    double b_min = p.alpha;
    double b_max = 1.0;
    double b_hat = 1.0;
    double d_min = p.alpha;
    result.mu = 0.0;
    do {
        if (result.iterations >= call_cap) {
            throw BoundSearchOverrun(
                "bound_search: greedy call cap " + std::to_string(call_cap) +
                    " exceeded (b_min " + std::to_string(b_min) + ", b_max " +
                    std::to_string(b_max) + ")",
                result);
        }
        auto [set, mu] = greedy_fast(p, b_hat);
        ++result.iterations;
        const double d_hat = std::abs(mu - p.alpha);
        const bool accepted = d_hat < d_min;
        result.trace.push_back({b_hat, mu, accepted});
        if (accepted) {
            result.s1 = std::move(set);
            result.mu = mu;
            d_min = d_hat;
        }
        if (mu > p.alpha) {
            // Halve toward mu from above; the ratio guard keeps a bound that
            // already collapsed past mu from looping forever.
            while (mu <= (b_min + b_max) / 2.0 && b_max / b_min > exp_delta)
                b_max = (b_min + b_max) / 2.0;
        } else {
            b_min = b_hat;
            if (p.alpha + d_hat < b_max) {
                b_max = p.alpha + d_hat;
                b_hat = b_max;
                continue;
            }
        }
        b_hat = (b_min + b_max) / 2.0;
    } while (b_max / b_min > exp_delta);
    result.f = std::abs(result.mu - p.alpha);
    return result;
}

namespace detail {
// C(q, j), saturating at cap + 1.
inline std::int64_t binomial(int q, int j, std::int64_t cap) {
    double value = 1.0;
    for (int i = 1; i <= j; ++i) {
        value = value * static_cast<double>(q - i + 1) / static_cast<double>(i);
        if (value > static_cast<double>(cap)) return cap + 1;
    }
    return static_cast<std::int64_t>(std::llround(value));
}

// Sum of C(q, j) for j <= k, saturating at cap + 1.
inline std::int64_t cumulative_binomial(int q, int k, std::int64_t cap) {
    std::int64_t total = 0;
    for (int j = 0; j <= k; ++j) {
        total += binomial(q, j, cap);
        if (total > cap) return cap + 1;
    }
    return total;
}

template <typename Fn>
void for_each_combination(const std::vector<NodeId>& pool, int size, Fn&& fn) {
    const int q = static_cast<int>(pool.size());
    if (size > q) return;
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    std::vector<NodeId> subset(size);
    for (;;) {
        for (int i = 0; i < size; ++i) subset[i] = pool[idx[i]];
        fn(subset);
        int i = size - 1;
        while (i >= 0 && idx[i] == q - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}
}  // namespace detail

// Exhaustive argmin of |mu(S) - alpha| over S subset of Q with |S| <= k,
// by size then lexicographic order; ties keep the lexicographically
// smallest set. The empty set participates (mu = 0).
inline std::pair<std::vector<NodeId>, double> brute_force(const SelectionProblem& p,
                                                          std::int64_t budget = 2'000'000) {
    p.validate();
    const int q = static_cast<int>(p.candidates.size());
    if (detail::cumulative_binomial(q, p.k, budget) > budget)
        throw ValidationError(
            "brute_force: subset count exceeds budget of " + std::to_string(budget) +
            " evaluations; use bound_search instead");
    const detail::MuEvaluator eval(p);
    std::vector<NodeId> best;
    double best_mu = 0.0;
    double best_f = std::abs(0.0 - p.alpha);
    for (int size = 1; size <= p.k; ++size) {
        detail::for_each_combination(p.candidates, size, [&](const std::vector<NodeId>& subset) {
            const double mu = eval.mu(subset);
            const double f = std::abs(mu - p.alpha);
            if (f < best_f || (f == best_f && std::lexicographical_compare(
                                                  subset.begin(), subset.end(), best.begin(),
                                                  best.end()))) {
                best = subset;
                best_mu = mu;
                best_f = f;
            }
        });
    }
    return {std::move(best), best_mu};
}

// Minimum cover number k_{mu,b} = min{|S| : mu(S) >= b} over S subset of Q;
// nullopt means no subset reaches b (infinity). Exhaustive by increasing
// size; mu's monotonicity makes mu(Q) < b a sound infinity certificate.
inline std::optional<int> min_cover_number(const SelectionProblem& p, double b,
                                           std::int64_t budget = 2'000'000) {
    p.validate();
    if (b <= 0.0) return 0;
    const detail::MuEvaluator eval(p);
    if (eval.mu(p.candidates) < b) return std::nullopt;
    std::int64_t used = 1;
    const int q = static_cast<int>(p.candidates.size());
    for (int size = 1; size <= q; ++size) {
        used += detail::binomial(q, size, budget);
        if (used > budget)
            throw ValidationError("min_cover_number: budget of " + std::to_string(budget) +
                                  " evaluations exceeded");
        bool found = false;
        detail::for_each_combination(p.candidates, size, [&](const std::vector<NodeId>& subset) {
            if (!found && eval.mu(subset) >= b) found = true;
        });
        if (found) return size;
    }
    return std::nullopt;  // unreachable when mu(Q) >= b, kept for safety
}

struct SubmodularityReport {
    int trials = 0;
    int monotonicity_violations = 0;
    int submodularity_violations = 0;
    double worst_monotonicity_gap = 0.0;  // most negative mu(T) - mu(S)
    double worst_submodularity_gap = 0.0;  // most negative marginal difference
};

// Samples random triples S subset of T subset of Q, u in Q minus T, and checks
// mu(T) >= mu(S) - tol and mu(S+u) - mu(S) >= mu(T+u) - mu(T) - tol.
inline SubmodularityReport check_submodularity(const WeightedDigraph& g, std::vector<NodeId> s0,
                                               LeaderModel model, Vector kappa, int trials,
                                               std::uint64_t seed, double tol = 1e-9) {
    SelectionProblem p = SelectionProblem::make(g, std::move(s0), 0.5, 1, model, std::move(kappa));
    const detail::MuEvaluator eval(p);
    SplitMix64 rng = substream(seed, "submodularity");
    SubmodularityReport report;
    report.trials = trials;
    const std::vector<NodeId>& q = p.candidates;
    for (int t = 0; t < trials; ++t) {
        std::vector<NodeId> shuffled = q;
        for (std::size_t i = shuffled.size() - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.next_below(i + 1)]);
        const std::size_t t_size = rng.next_below(shuffled.size());  // leaves room for u
        std::vector<NodeId> big(shuffled.begin(), shuffled.begin() + t_size);
        const NodeId u = shuffled[t_size];
        std::vector<NodeId> small = big;
        for (std::size_t i = small.size(); i > 0; --i)
            std::swap(small[i - 1], small[rng.next_below(i)]);
        small.resize(big.empty() ? 0 : rng.next_below(big.size() + 1));
        std::sort(big.begin(), big.end());
        std::sort(small.begin(), small.end());

        auto with = [](std::vector<NodeId> set, NodeId extra) {
            set.insert(std::lower_bound(set.begin(), set.end(), extra), extra);
            return set;
        };
        const double mu_s = eval.mu(small);
        const double mu_t = eval.mu(big);
        const double mu_su = eval.mu(with(small, u));
        const double mu_tu = eval.mu(with(big, u));
        const double monotone_gap = mu_t - mu_s;
        const double marginal_gap = (mu_su - mu_s) - (mu_tu - mu_t);
        report.worst_monotonicity_gap = std::min(report.worst_monotonicity_gap, monotone_gap);
        report.worst_submodularity_gap = std::min(report.worst_submodularity_gap, marginal_gap);
        if (monotone_gap < -tol) ++report.monotonicity_violations;
        if (marginal_gap < -tol) ++report.submodularity_violations;
    }
    return report;
}

}  // namespace opinionshift
