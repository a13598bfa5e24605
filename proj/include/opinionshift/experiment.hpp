#pragma once

#include "opinionshift/common.hpp"
#include "opinionshift/dynamics.hpp"
#include "opinionshift/generate.hpp"
#include "opinionshift/graph.hpp"
#include "opinionshift/rng.hpp"
#include "opinionshift/selector.hpp"
#include "opinionshift/single_leader.hpp"
#include "opinionshift/walks.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace opinionshift {

enum class GraphSource { EdgeList, ErdosRenyi, Gadget };

// Declarative description of a sweep: graph source, leader model, S0
// source, grids over alpha / k / delta, and the methods to compare.
// Reruns with the same spec are byte-identical except for timing columns.
struct ExperimentSpec {
    GraphSource source = GraphSource::ErdosRenyi;
    std::string edge_list_path;
    bool undirected = false;
    bool dedupe = false;  // keep weight 1 for duplicate edges instead of summing
    int er_n = 30;
    double er_p = 0.1;
    std::string gadget_name;
    double gadget_star_weight = 3.0;

    LeaderModel model = LeaderModel::Absolute;
    std::vector<NodeId> s0_explicit;
    int s0_random_count = 0;  // used when s0_explicit is empty

    std::vector<double> alphas{0.5};
    std::vector<int> ks{1};
    double delta = 1e-4;
    std::vector<double> deltas;  // optional sweep; empty means {delta}
    double kappa = 1.0;          // uniform stubbornness for the influenced model
    std::vector<std::string> methods{"bound-search"};
    int repetitions = 1;
    std::uint64_t seed = 0;
    std::string output_path;  // base name; writes <path>.csv and <path>.json
};

struct ExperimentRow {
    int repetition = 0;
    double alpha = 0.0;
    int k = 0;
    double delta = 0.0;
    std::string method;
    std::vector<NodeId> s1;
    double mu = std::numeric_limits<double>::quiet_NaN();
    double runtime_ms = 0.0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
    double f() const { return std::abs(mu - alpha); }
};

struct ExperimentAggregate {
    double alpha = 0.0;
    int k = 0;
    double delta = 0.0;
    std::string method;
    int runs = 0;
    int failures = 0;
    double mu_mean = std::numeric_limits<double>::quiet_NaN();
    double f_mean = std::numeric_limits<double>::quiet_NaN();  // mean of per-row f
    double runtime_ms_mean = 0.0;

    double f() const { return std::abs(mu_mean - alpha); }  // f of the mean mu
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<ExperimentAggregate> aggregates;
};

inline void write_experiment_csv(const ExperimentResult& result, std::ostream& out);
inline void write_experiment_json(const ExperimentSpec& spec, const ExperimentResult& result,
                                  std::ostream& out);

namespace detail {

inline const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> names = {"bound-search", "greedy", "brute-force",
                                                   "pds", "pds-k", "random"};
    return names;
}

inline void validate_spec(const ExperimentSpec& spec) {
    if (spec.source == GraphSource::EdgeList && spec.edge_list_path.empty())
        throw ValidationError("experiment: edge-list source needs a path");
    if (spec.source == GraphSource::ErdosRenyi && spec.er_n < 1)
        throw ValidationError("experiment: ER node count must be positive");
    if (spec.source == GraphSource::Gadget && spec.gadget_name.empty())
        throw ValidationError("experiment: gadget source needs a cubic graph name");
    if (spec.alphas.empty()) throw ValidationError("experiment: alpha list is empty");
    for (double a : spec.alphas)
        if (!(a >= 0.0 && a <= 1.0))
            throw ValidationError("experiment: alpha values must lie in [0, 1]");
    if (spec.ks.empty()) throw ValidationError("experiment: k list is empty");
    for (int k : spec.ks)
        if (k < 1) throw ValidationError("experiment: k values must be positive");
    if (!(spec.delta > 0.0)) throw ValidationError("experiment: delta must be positive");
    for (double d : spec.deltas)
        if (!(d > 0.0)) throw ValidationError("experiment: delta values must be positive");
    if (!(spec.kappa > 0.0)) throw ValidationError("experiment: kappa must be positive");
    if (spec.repetitions < 1) throw ValidationError("experiment: repetitions must be positive");
    if (spec.s0_explicit.empty() && spec.s0_random_count < 1)
        throw ValidationError("experiment: S0 must be explicit or a positive random count");
    if (spec.methods.empty()) throw ValidationError("experiment: method list is empty");
    const auto& known = known_methods();
    for (const std::string& m : spec.methods)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw ValidationError("experiment: unknown method '" + m + "'");
}

inline WeightedDigraph experiment_graph(const ExperimentSpec& spec, int repetition,
                                        const std::optional<WeightedDigraph>& loaded) {
    switch (spec.source) {
        case GraphSource::EdgeList:
            return *loaded;
        case GraphSource::ErdosRenyi: {
            const std::uint64_t child = substream(spec.seed, "graph", repetition).next();
            return generate_er(spec.er_n, spec.er_p, child, true);
        }
        case GraphSource::Gadget:
        default:
            return gadget_graph(named_cubic_graph(spec.gadget_name), spec.gadget_star_weight)
                .first;
    }
}

inline std::vector<NodeId> experiment_s0(const ExperimentSpec& spec, int repetition,
                                         const WeightedDigraph& g) {
    if (!spec.s0_explicit.empty()) return spec.s0_explicit;
    const int n = g.node_count();
    if (spec.s0_random_count >= n)
        throw ValidationError("experiment: random S0 would cover the whole graph");
    SplitMix64 rng = substream(spec.seed, "s0", repetition);
    std::vector<NodeId> ids(n);
    for (NodeId v = 0; v < n; ++v) ids[v] = v;
    for (int i = 0; i < spec.s0_random_count; ++i)
        std::swap(ids[i], ids[i + rng.next_below(ids.size() - i)]);
    std::vector<NodeId> s0(ids.begin(), ids.begin() + spec.s0_random_count);
    std::sort(s0.begin(), s0.end());
    return s0;
}

// Multi-leader heuristic baseline: walk S0 in id order (cycling while seats
// remain), and for each member pick the candidate minimizing the chosen
// single-leader balance criterion, then retire that candidate.
inline std::vector<NodeId> pds_pick(const SelectionProblem& p, const WalkKernel& kernel,
                                    bool influenced_numerator) {
    std::vector<NodeId> pool = p.candidates;
    std::vector<NodeId> picked;
    std::size_t s0_cursor = 0;
    while (static_cast<int>(picked.size()) < p.k && !pool.empty()) {
        const NodeId s = p.s0[s0_cursor % p.s0.size()];
        ++s0_cursor;
        std::size_t best = 0;
        double best_score = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const BalanceReport rep =
                influenced_numerator
                    ? balance_influenced(kernel, s, pool[i], p.kappa_at(s), p.kappa_at(pool[i]),
                                         p.alpha)
                    : balance_absolute(kernel, s, pool[i], p.alpha);
            const double score = std::abs(rep.numerator);
            if (score < best_score) {
                best_score = score;
                best = i;
            }
        }
        picked.push_back(pool[best]);
        pool.erase(pool.begin() + best);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

inline std::vector<NodeId> random_pick(const SelectionProblem& p, std::uint64_t seed,
                                       std::uint64_t row_index) {
    SplitMix64 rng = substream(seed, "heuristics", row_index);
    std::vector<NodeId> pool = p.candidates;
    for (int i = 0; i < p.k; ++i)
        std::swap(pool[i], pool[i + rng.next_below(pool.size() - i)]);
    std::vector<NodeId> picked(pool.begin(), pool.begin() + p.k);
    std::sort(picked.begin(), picked.end());
    return picked;
}

inline void format_double(std::string& out, double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    out += buffer;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
    detail::validate_spec(spec);
    std::optional<WeightedDigraph> loaded;
    if (spec.source == GraphSource::EdgeList) {
        std::ifstream in(spec.edge_list_path);
        if (!in) throw ValidationError("experiment: cannot open '" + spec.edge_list_path + "'");
        loaded = load_edge_list(in, spec.undirected,
                                spec.dedupe ? MergePolicy::KeepFirst : MergePolicy::Sum);
    }
    const std::vector<double> deltas = spec.deltas.empty() ? std::vector<double>{spec.delta}
                                                           : spec.deltas;
    ExperimentResult result;
    std::uint64_t row_index = 0;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        std::optional<WeightedDigraph> graph;
        std::optional<std::vector<NodeId>> s0;
        std::optional<WalkKernel> kernel;  // built lazily for pds methods
        std::string setup_error;
        try {
            graph = detail::experiment_graph(spec, rep, loaded);
            s0 = detail::experiment_s0(spec, rep, *graph);
        } catch (const std::runtime_error& e) {
            setup_error = e.what();
        }
        for (double alpha : spec.alphas)
            for (int k : spec.ks)
                for (double delta : deltas)
                    for (const std::string& method : spec.methods) {
                        ExperimentRow row;
                        row.repetition = rep;
                        row.alpha = alpha;
                        row.k = k;
                        row.delta = delta;
                        row.method = method;
                        ++row_index;
                        if (!setup_error.empty()) {
                            row.error = setup_error;
                            result.rows.push_back(std::move(row));
                            continue;
                        }
                        const auto start = std::chrono::steady_clock::now();
                        try {
                            Vector kappa;
                            if (spec.model == LeaderModel::Influenced)
                                kappa = Vector::Constant(graph->node_count(), spec.kappa);
                            SelectionProblem problem = SelectionProblem::make(
                                *graph, *s0, alpha, k, spec.model, kappa, {}, delta);
                            const detail::MuEvaluator eval(problem);
                            if (method == "bound-search") {
                                SelectionResult sel = bound_search(problem);
                                row.s1 = std::move(sel.s1);
                                row.mu = sel.mu;
                            } else if (method == "greedy") {
                                auto [set, mu] = greedy_fast(problem, 1.0);
                                row.s1 = std::move(set);
                                row.mu = mu;
                            } else if (method == "brute-force") {
                                auto [set, mu] = brute_force(problem);
                                row.s1 = std::move(set);
                                row.mu = mu;
                            } else if (method == "pds" || method == "pds-k") {
                                if (!kernel) kernel.emplace(*graph);
                                row.s1 = detail::pds_pick(problem, *kernel, method == "pds-k");
                                row.mu = eval.mu(row.s1);
                            } else {  // random
                                row.s1 = detail::random_pick(problem, spec.seed, row_index);
                                row.mu = eval.mu(row.s1);
                            }
                        } catch (const std::runtime_error& e) {
                            row.error = e.what();
                        }
                        const auto stop = std::chrono::steady_clock::now();
                        row.runtime_ms =
                            std::chrono::duration<double, std::milli>(stop - start).count();
                        result.rows.push_back(std::move(row));
                    }
    }

    // Mean over repetitions for each (alpha, k, delta, method) cell.
    for (const ExperimentRow& row : result.rows) {
        auto it = std::find_if(result.aggregates.begin(), result.aggregates.end(),
                               [&](const ExperimentAggregate& a) {
                                   return a.alpha == row.alpha && a.k == row.k &&
                                          a.delta == row.delta && a.method == row.method;
                               });
        if (it == result.aggregates.end()) {
            result.aggregates.push_back({row.alpha, row.k, row.delta, row.method, 0, 0, 0.0,
                                         0.0, 0.0});
            it = std::prev(result.aggregates.end());
        }
        ++it->runs;
        if (row.ok()) {
            it->mu_mean += row.mu;
            it->f_mean += row.f();
            it->runtime_ms_mean += row.runtime_ms;
        } else {
            ++it->failures;
        }
    }
    for (ExperimentAggregate& a : result.aggregates) {
        const int good = a.runs - a.failures;
        if (good > 0) {
            a.mu_mean /= good;
            a.f_mean /= good;
            a.runtime_ms_mean /= good;
        } else {
            a.mu_mean = std::numeric_limits<double>::quiet_NaN();
            a.f_mean = std::numeric_limits<double>::quiet_NaN();
        }
    }

    if (!spec.output_path.empty()) {
        std::ofstream csv(spec.output_path + ".csv");
        if (!csv)
            throw ValidationError("experiment: cannot write '" + spec.output_path + ".csv'");
        write_experiment_csv(result, csv);
        std::ofstream json_out(spec.output_path + ".json");
        if (!json_out)
            throw ValidationError("experiment: cannot write '" + spec.output_path + ".json'");
        write_experiment_json(spec, result, json_out);
    }
    return result;
}

// CSV layout: result rows first, then one mean row per cell. The f column
// is always |mu - alpha| for the mu in that row; f_mean carries the mean of
// per-repetition f values on mean rows.
inline void write_experiment_csv(const ExperimentResult& result, std::ostream& out) {
    out << "kind,repetition,alpha,k,delta,method,s1,mu,f,f_mean,runtime_ms,runs,failures,error\n";
    auto ids = [](const std::vector<NodeId>& s1) {
        std::string joined;
        for (std::size_t i = 0; i < s1.size(); ++i) {
            if (i) joined += ' ';
            joined += std::to_string(s1[i]);
        }
        return joined;
    };
    std::string line;
    for (const ExperimentRow& row : result.rows) {
        line = "result,";
        line += std::to_string(row.repetition);
        line += ',';
        detail::format_double(line, row.alpha);
        line += ',';
        line += std::to_string(row.k);
        line += ',';
        detail::format_double(line, row.delta);
        line += ',';
        line += row.method;
        line += ',';
        line += ids(row.s1);
        line += ',';
        if (row.ok()) {
            detail::format_double(line, row.mu);
            line += ',';
            detail::format_double(line, row.f());
        } else {
            line += ',';
        }
        line += ",,";  // f_mean blank on result rows
        detail::format_double(line, row.runtime_ms);
        line += ",,,";
        std::string clean = row.error;
        for (char& c : clean)
            if (c == ',' || c == '\n') c = ';';
        line += clean;
        out << line << '\n';
    }
    for (const ExperimentAggregate& a : result.aggregates) {
        line = "mean,,";
        detail::format_double(line, a.alpha);
        line += ',';
        line += std::to_string(a.k);
        line += ',';
        detail::format_double(line, a.delta);
        line += ',';
        line += a.method;
        line += ",,";
        if (a.runs > a.failures) {
            detail::format_double(line, a.mu_mean);
            line += ',';
            detail::format_double(line, a.f());
            line += ',';
            detail::format_double(line, a.f_mean);
        } else {
            line += ",,";
        }
        line += ',';
        detail::format_double(line, a.runtime_ms_mean);
        line += ',';
        line += std::to_string(a.runs);
        line += ',';
        line += std::to_string(a.failures);
        line += ',';
        out << line << '\n';
    }
}

inline void write_experiment_json(const ExperimentSpec& spec, const ExperimentResult& result,
                                  std::ostream& out) {
    nlohmann::json doc;
    doc["model"] = to_string(spec.model);
    doc["seed"] = spec.seed;
    doc["repetitions"] = spec.repetitions;
    doc["alphas"] = spec.alphas;
    doc["ks"] = spec.ks;
    doc["methods"] = spec.methods;
    doc["rows"] = nlohmann::json::array();
    for (const ExperimentRow& row : result.rows) {
        nlohmann::json j;
        j["repetition"] = row.repetition;
        j["alpha"] = row.alpha;
        j["k"] = row.k;
        j["delta"] = row.delta;
        j["method"] = row.method;
        j["s1"] = row.s1;
        if (row.ok()) {
            j["mu"] = row.mu;
            j["f"] = row.f();
        } else {
            j["error"] = row.error;
        }
        j["runtime_ms"] = row.runtime_ms;
        doc["rows"].push_back(std::move(j));
    }
    doc["aggregates"] = nlohmann::json::array();
    for (const ExperimentAggregate& a : result.aggregates) {
        nlohmann::json j;
        j["alpha"] = a.alpha;
        j["k"] = a.k;
        j["delta"] = a.delta;
        j["method"] = a.method;
        j["runs"] = a.runs;
        j["failures"] = a.failures;
        if (a.runs > a.failures) {
            j["mu_mean"] = a.mu_mean;
            j["f_of_mean"] = a.f();
            j["f_mean"] = a.f_mean;
        }
        j["runtime_ms_mean"] = a.runtime_ms_mean;
        doc["aggregates"].push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace opinionshift
