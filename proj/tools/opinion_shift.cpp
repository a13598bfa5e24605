// opinion-shift: command-line front end for leader placement and opinion
// dynamics on weighted digraphs. Exit codes: 0 success, 1 validation
// error, 2 numeric failure.

#include "opinionshift/dynamics.hpp"
#include "opinionshift/equivalent.hpp"
#include "opinionshift/experiment.hpp"
#include "opinionshift/generate.hpp"
#include "opinionshift/graph.hpp"
#include "opinionshift/selector.hpp"
#include "opinionshift/single_leader.hpp"
#include "opinionshift/walks.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace opinionshift;

struct GraphOptions {
    std::string path;
    std::vector<double> er;  // n p
    std::string gadget;
    double star_weight = 3.0;
    bool undirected = false;
    bool dedupe = false;
    bool allow_disconnected = false;
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
    cmd->add_option("--graph", g.path, "edge-list file: 'u v [w]' per line, '#' comments");
    cmd->add_option("--er", g.er, "Erdos-Renyi graph: N P (seeded by --seed)")->expected(2);
    cmd->add_option("--gadget", g.gadget,
                    "star-augmented cubic graph (k4, k33, prism, cube, petersen)");
    cmd->add_option("--star-weight", g.star_weight, "center edge weight for --gadget");
    cmd->add_flag("--undirected", g.undirected, "mirror every edge from the file");
    cmd->add_flag("--dedupe", g.dedupe, "keep the first weight for repeated edges instead of summing");
    cmd->add_flag("--allow-disconnected", g.allow_disconnected,
                  "skip the connectivity retries for --er");
}

WeightedDigraph build_graph(const GraphOptions& g, std::uint64_t seed) {
    const int sources = (!g.path.empty() ? 1 : 0) + (!g.er.empty() ? 1 : 0) +
                        (!g.gadget.empty() ? 1 : 0);
    if (sources != 1)
        throw ValidationError("choose exactly one graph source: --graph, --er, or --gadget");
    if (!g.path.empty()) {
        std::ifstream in(g.path);
        if (!in) throw ValidationError("cannot open '" + g.path + "'");
        return load_edge_list(in, g.undirected,
                              g.dedupe ? MergePolicy::KeepFirst : MergePolicy::Sum);
    }
    if (!g.er.empty()) {
        const int n = static_cast<int>(g.er[0]);
        return generate_er(n, g.er[1], seed, !g.allow_disconnected);
    }
    return gadget_graph(named_cubic_graph(g.gadget), g.star_weight).first;
}

bool parse_int(const std::string& text, long long& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

// Each token is a node id, a node label, or a path to a whitespace-separated
// file of ids/labels.
std::vector<NodeId> parse_ids(const std::vector<std::string>& tokens, const WeightedDigraph& g) {
    std::vector<NodeId> ids;
    for (const std::string& token : tokens) {
        long long value = 0;
        if (parse_int(token, value)) {
            if (value < 0 || value >= g.node_count())
                throw ValidationError("node id " + token + " out of range");
            ids.push_back(static_cast<NodeId>(value));
            continue;
        }
        if (auto hit = g.find(token)) {
            ids.push_back(*hit);
            continue;
        }
        std::ifstream in(token);
        if (!in) throw ValidationError("'" + token + "' is neither a node nor a readable file");
        std::vector<std::string> inner;
        std::string word;
        while (in >> word) inner.push_back(word);
        const std::vector<NodeId> from_file = parse_ids(inner, g);
        ids.insert(ids.end(), from_file.begin(), from_file.end());
    }
    return ids;
}

// "--kappa 2.5" means uniform stubbornness; "--kappa file" reads one value
// per node in id order.
Vector parse_kappa(const std::string& text, int n) {
    if (text.empty()) return Vector();
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used == text.size()) return Vector::Constant(n, value);
    } catch (const std::exception&) {
    }
    std::ifstream in(text);
    if (!in) throw ValidationError("kappa: '" + text + "' is neither a number nor a file");
    Vector kappa(n);
    for (int v = 0; v < n; ++v)
        if (!(in >> kappa(v)))
            throw ValidationError("kappa file '" + text + "' needs " + std::to_string(n) +
                                  " values");
    return kappa;
}

LeaderModel parse_model(const std::string& name) {
    if (name == "absolute") return LeaderModel::Absolute;
    if (name == "influenced") return LeaderModel::Influenced;
    throw ValidationError("unknown model '" + name + "' (absolute or influenced)");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot write '" + out_path + "'");
    out << text;
}

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

json labelled_vector(const WeightedDigraph& g, const Vector& x) {
    json out = json::object();
    for (NodeId v = 0; v < g.node_count(); ++v) out[g.label(v)] = x(v);
    return out;
}

void run_analyze(const GraphOptions& gopt, std::uint64_t seed,
                 const std::vector<std::string>& pair_tokens, const std::string& out_path) {
    const WeightedDigraph g = build_graph(gopt, seed);
    json doc;
    doc["nodes"] = g.node_count();
    doc["edges"] = g.edge_count();
    doc["symmetric"] = g.is_symmetric();
    const WalkKernel kernel(g);
    doc["stationary"] = labelled_vector(g, kernel.stationary_distribution());
    if (g.is_symmetric())
        doc["information_centrality"] = labelled_vector(g, information_centrality_all(g));
    if (!pair_tokens.empty()) {
        const std::vector<NodeId> pair = parse_ids(pair_tokens, g);
        if (pair.size() != 2) throw ValidationError("--pair needs exactly two nodes");
        const NodeId u = pair[0], v = pair[1];
        json p;
        p["u"] = g.label(u);
        p["v"] = g.label(v);
        p["hitting_time_to_u_from_v"] = hitting_time(kernel, u, v);
        p["hitting_time_to_v_from_u"] = hitting_time(kernel, v, u);
        p["commute_time"] = commute_time(kernel, u, v);
        p["domination_u_over_v"] = domination_score(kernel, u, v);
        p["domination_v_over_u"] = domination_score(kernel, v, u);
        if (g.is_symmetric()) p["effective_resistance"] = effective_resistance(g, u, v);
        doc["pair"] = std::move(p);
    }
    emit(doc.dump(2) + "\n", out_path);
}

void run_single(const GraphOptions& gopt, std::uint64_t seed, const std::string& s0_token,
                double alpha, const std::string& model_name, const std::string& kappa_text,
                const std::string& heuristic_name, const std::vector<std::string>& cand_tokens,
                const std::string& out_path) {
    const WeightedDigraph g = build_graph(gopt, seed);
    const std::vector<NodeId> s0_ids = parse_ids({s0_token}, g);
    if (s0_ids.size() != 1) throw ValidationError("single: --s0 needs exactly one node");
    const NodeId s0 = s0_ids[0];
    const LeaderModel model = parse_model(model_name);
    const Vector kappa = parse_kappa(kappa_text, g.node_count());
    const SingleHeuristic heuristic = single_heuristic_from_string(heuristic_name);
    std::vector<NodeId> pool;
    if (!cand_tokens.empty()) pool = parse_ids(cand_tokens, g);
    const WalkKernel kernel(g);
    const NodeId chosen = select_single(kernel, s0, alpha, model, kappa, heuristic, seed,
                                        cand_tokens.empty() ? nullptr : &pool);
    const double k0 = kappa.size() == 0 ? 1.0 : kappa(s0);
    const double k1 = kappa.size() == 0 ? 1.0 : kappa(chosen);
    const BalanceReport report = model == LeaderModel::Influenced
                                     ? balance_influenced(kernel, s0, chosen, k0, k1, alpha)
                                     : balance_absolute(kernel, s0, chosen, alpha);
    json doc;
    doc["heuristic"] = to_string(heuristic);
    doc["model"] = to_string(model);
    doc["s0"] = g.label(s0);
    doc["chosen"] = g.label(chosen);
    doc["alpha"] = alpha;
    doc["mu"] = report.mu;
    doc["f"] = report.f;
    doc["numerator"] = report.numerator;
    doc["denominator"] = report.denominator;
    emit(doc.dump(2) + "\n", out_path);
}

void run_select(const GraphOptions& gopt, std::uint64_t seed,
                const std::vector<std::string>& s0_tokens, double alpha, int k, double delta,
                const std::string& model_name, const std::string& kappa_text,
                const std::vector<std::string>& cand_tokens, const std::string& method,
                const std::string& format, const std::string& out_path) {
    const WeightedDigraph g = build_graph(gopt, seed);
    const LeaderModel model = parse_model(model_name);
    const std::vector<NodeId> s0 = parse_ids(s0_tokens, g);
    std::vector<NodeId> candidates;
    if (!cand_tokens.empty()) candidates = parse_ids(cand_tokens, g);
    const Vector kappa = model == LeaderModel::Influenced
                             ? parse_kappa(kappa_text.empty() ? "1" : kappa_text, g.node_count())
                             : Vector();
    const SelectionProblem problem =
        SelectionProblem::make(g, s0, alpha, k, model, kappa, candidates, delta);

    SelectionResult result;
    if (method == "bound-search") {
        result = bound_search(problem);
    } else if (method == "greedy") {
        auto [set, mu] = greedy_fast(problem, 1.0);
        result.s1 = std::move(set);
        result.mu = mu;
        result.f = std::abs(mu - alpha);
    } else if (method == "brute-force") {
        auto [set, mu] = brute_force(problem);
        result.s1 = std::move(set);
        result.mu = mu;
        result.f = std::abs(mu - alpha);
    } else {
        throw ValidationError("unknown method '" + method +
                              "' (bound-search, greedy, brute-force)");
    }

    if (format == "csv") {
        std::string text = "s1,mu,f,alpha,k,delta,method,iterations\n";
        for (std::size_t i = 0; i < result.s1.size(); ++i) {
            if (i) text += ' ';
            text += std::to_string(result.s1[i]);
        }
        text += ',' + format_number(result.mu) + ',' + format_number(std::abs(result.mu - alpha)) +
                ',' + format_number(alpha) + ',' + std::to_string(k) + ',' +
                format_number(delta) + ',' + method + ',' + std::to_string(result.iterations) +
                '\n';
        emit(text, out_path);
        return;
    }
    if (format != "json") throw ValidationError("unknown output format '" + format + "'");
    json doc;
    doc["s1"] = result.s1;
    json labels = json::array();
    for (NodeId v : result.s1) labels.push_back(g.label(v));
    doc["s1_labels"] = std::move(labels);
    doc["mu"] = result.mu;
    doc["f"] = result.f;
    doc["alpha"] = alpha;
    doc["k"] = k;
    doc["delta"] = delta;
    doc["method"] = method;
    doc["iterations"] = result.iterations;
    doc["trace"] = json::array();
    for (const BoundSearchStep& step : result.trace)
        doc["trace"].push_back(
            {{"b_hat", step.b_hat}, {"mu", step.mu}, {"accepted", step.accepted}});
    emit(doc.dump(2) + "\n", out_path);
}

void run_simulate(const GraphOptions& gopt, std::uint64_t seed,
                  const std::vector<std::string>& s0_tokens,
                  const std::vector<std::string>& s1_tokens, const std::string& model_name,
                  const std::string& kappa_text, double horizon, double step, double x0_value,
                  const std::string& out_path) {
    const WeightedDigraph g = build_graph(gopt, seed);
    const LeaderModel model = parse_model(model_name);
    const std::vector<NodeId> s0 = parse_ids(s0_tokens, g);
    std::vector<NodeId> s1;
    if (!s1_tokens.empty()) s1 = parse_ids(s1_tokens, g);
    LeaderConfig cfg = model == LeaderModel::Influenced
                           ? LeaderConfig::influenced(s0, s1, parse_kappa(
                                 kappa_text.empty() ? "1" : kappa_text, g.node_count()))
                           : LeaderConfig::absolute(s0, s1);

    if (horizon > 0.0) {
        const OpinionSystem sys = make_system(g, cfg);
        Vector x0 = Vector::Constant(g.node_count(), x0_value);
        if (model == LeaderModel::Absolute) {
            for (NodeId v : cfg.s0) x0(v) = 0.0;
            for (NodeId v : cfg.s1) x0(v) = 1.0;
        }
        const Trajectory traj = integrate_transient(sys, x0, horizon, step);
        std::string text = "t";
        for (NodeId v = 0; v < g.node_count(); ++v) text += ",node" + std::to_string(v);
        text += '\n';
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            text += format_number(traj.times[i]);
            for (NodeId v = 0; v < g.node_count(); ++v)
                text += ',' + format_number(traj.states(static_cast<int>(i), v));
            text += '\n';
        }
        emit(text, out_path);
        return;
    }

    const SteadyState ss = steady_state(g, cfg);
    json doc;
    doc["model"] = to_string(model);
    json s0_labels = json::array(), s1_labels = json::array();
    for (NodeId v : cfg.s0) s0_labels.push_back(g.label(v));
    for (NodeId v : cfg.s1) s1_labels.push_back(g.label(v));
    doc["s0"] = std::move(s0_labels);
    doc["s1"] = std::move(s1_labels);
    doc["mu"] = ss.mu;
    doc["x_hat"] = labelled_vector(g, ss.x_hat);
    emit(doc.dump(2) + "\n", out_path);
}

ExperimentSpec parse_experiment_spec(const json& doc) {
    ExperimentSpec spec;
    if (!doc.contains("generator")) throw ValidationError("experiment spec: missing generator");
    const json& gen = doc.at("generator");
    const std::string type = gen.value("type", "");
    if (type == "er") {
        spec.source = GraphSource::ErdosRenyi;
        spec.er_n = gen.value("n", 30);
        spec.er_p = gen.value("p", 0.1);
    } else if (type == "edge-list") {
        spec.source = GraphSource::EdgeList;
        spec.edge_list_path = gen.value("path", "");
        spec.undirected = gen.value("undirected", false);
        spec.dedupe = gen.value("dedupe", false);
    } else if (type == "gadget") {
        spec.source = GraphSource::Gadget;
        spec.gadget_name = gen.value("name", "");
        spec.gadget_star_weight = gen.value("star_weight", 3.0);
    } else {
        throw ValidationError("experiment spec: generator type must be er, edge-list, or gadget");
    }
    spec.model = parse_model(doc.value("model", "absolute"));
    if (doc.contains("s0")) {
        const json& s0 = doc.at("s0");
        if (s0.is_array())
            spec.s0_explicit = s0.get<std::vector<NodeId>>();
        else if (s0.is_object() && s0.contains("random"))
            spec.s0_random_count = s0.at("random").get<int>();
        else
            throw ValidationError("experiment spec: s0 must be an id array or {\"random\": n}");
    }
    if (doc.contains("alphas")) spec.alphas = doc.at("alphas").get<std::vector<double>>();
    if (doc.contains("ks")) spec.ks = doc.at("ks").get<std::vector<int>>();
    spec.delta = doc.value("delta", 1e-4);
    if (doc.contains("deltas")) spec.deltas = doc.at("deltas").get<std::vector<double>>();
    spec.kappa = doc.value("kappa", 1.0);
    if (doc.contains("methods")) spec.methods = doc.at("methods").get<std::vector<std::string>>();
    spec.repetitions = doc.value("repetitions", 1);
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.output_path = doc.value("output", "");
    return spec;
}

void run_experiment_cmd(const std::string& spec_path, const std::string& output_override,
                        std::optional<std::uint64_t> seed_override) {
    std::ifstream in(spec_path);
    if (!in) throw ValidationError("cannot open spec '" + spec_path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError("experiment spec: " + std::string(e.what()));
    }
    ExperimentSpec spec = parse_experiment_spec(doc);
    if (!output_override.empty()) spec.output_path = output_override;
    if (seed_override) spec.seed = *seed_override;
    const ExperimentResult result = run_experiment(spec);
    if (spec.output_path.empty()) {
        std::ostringstream csv;
        write_experiment_csv(result, csv);
        std::cout << csv.str();
    } else {
        int failures = 0;
        for (const ExperimentRow& row : result.rows)
            if (!row.ok()) ++failures;
        std::cout << "wrote " << result.rows.size() << " rows ("
                  << failures << " failed) to " << spec.output_path << ".{csv,json}\n";
    }
}

void run_gadget(const std::string& name, double star_weight, const std::string& out_path) {
    const auto [g, center] = gadget_graph(named_cubic_graph(name), star_weight);
    std::string text = "# gadget " + name + ": " + std::to_string(g.node_count()) +
                       " nodes, center node " + std::to_string(center) + "\n";
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (const Edge& e : g.out_edges(v))
            text += std::to_string(e.source) + " " + std::to_string(e.target) + " " +
                    format_number(e.weight) + "\n";
    emit(text, out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opinion-shift: leader placement and opinion dynamics on weighted digraphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "opinion-shift 0.1.0");

    GraphOptions graph_opt;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string model_name = "absolute";
    std::string kappa_text;
    std::vector<std::string> s0_tokens, s1_tokens, cand_tokens, pair_tokens;
    double alpha = 0.5;
    int k = 1;
    double delta = 1e-4;

    CLI::App* analyze = app.add_subcommand("analyze", "random-walk analytics for a graph");
    add_graph_options(analyze, graph_opt);
    analyze->add_option("--seed", seed, "seed for --er");
    analyze->add_option("--pair", pair_tokens, "two nodes: hitting/commute/domination scores")
        ->expected(2);
    analyze->add_option("--output", out_path, "output file (default stdout)");
    analyze->callback([&] { run_analyze(graph_opt, seed, pair_tokens, out_path); });

    CLI::App* single = app.add_subcommand("single", "pick one opposing leader by a heuristic");
    add_graph_options(single, graph_opt);
    std::string s0_single, heuristic_name = "optimal";
    single->add_option("--seed", seed, "seed for --er and the random heuristic");
    single->add_option("--s0", s0_single, "the existing leader")->required();
    single->add_option("--alpha", alpha, "target average opinion");
    single->add_option("--model", model_name, "absolute | influenced");
    single->add_option("--kappa", kappa_text, "stubbornness: number or per-node file");
    single->add_option("--heuristic", heuristic_name, "optimal | ds | er | dsk | random");
    single->add_option("--candidates", cand_tokens, "candidate nodes (default: all but s0)");
    single->add_option("--output", out_path, "output file (default stdout)");
    single->callback([&] {
        run_single(graph_opt, seed, s0_single, alpha, model_name, kappa_text, heuristic_name,
                   cand_tokens, out_path);
    });

    CLI::App* select = app.add_subcommand("select", "choose a leader set steering mu to alpha");
    add_graph_options(select, graph_opt);
    std::string method = "bound-search", format = "json";
    select->add_option("--seed", seed, "seed for --er");
    select->add_option("--s0", s0_tokens, "existing leader set (ids or file)")->required();
    select->add_option("--alpha", alpha, "target average opinion");
    select->add_option("--k", k, "maximum size of the new leader set");
    select->add_option("--delta", delta, "bound-search tolerance");
    select->add_option("--model", model_name, "absolute | influenced");
    select->add_option("--kappa", kappa_text, "stubbornness: number or per-node file");
    select->add_option("--candidates", cand_tokens, "candidate nodes (default: all non-S0)");
    select->add_option("--method", method, "bound-search | greedy | brute-force");
    select->add_option("--out", format, "json | csv");
    select->add_option("--output", out_path, "output file (default stdout)");
    select->callback([&] {
        run_select(graph_opt, seed, s0_tokens, alpha, k, delta, model_name, kappa_text,
                   cand_tokens, method, format, out_path);
    });

    CLI::App* simulate = app.add_subcommand("simulate", "steady state or transient trajectory");
    add_graph_options(simulate, graph_opt);
    double horizon = 0.0, step = 0.01, x0_value = 0.5;
    simulate->add_option("--seed", seed, "seed for --er");
    simulate->add_option("--s0", s0_tokens, "party-0 leaders (ids or file)")->required();
    simulate->add_option("--s1", s1_tokens, "party-1 leaders (ids or file)");
    simulate->add_option("--model", model_name, "absolute | influenced");
    simulate->add_option("--kappa", kappa_text, "stubbornness: number or per-node file");
    simulate->add_option("--horizon", horizon, "integrate the ODE to this time (CSV output)");
    simulate->add_option("--step", step, "RK4 step size");
    simulate->add_option("--x0", x0_value, "initial follower opinion");
    simulate->add_option("--output", out_path, "output file (default stdout)");
    simulate->callback([&] {
        run_simulate(graph_opt, seed, s0_tokens, s1_tokens, model_name, kappa_text, horizon,
                     step, x0_value, out_path);
    });

    CLI::App* experiment = app.add_subcommand("experiment", "run a sweep from a JSON spec");
    std::string spec_path, output_override;
    std::optional<std::uint64_t> seed_override;
    experiment->add_option("--spec", spec_path, "JSON experiment spec")->required();
    experiment->add_option("--output", output_override, "override the spec's output path");
    experiment->add_option("--seed", seed_override, "override the spec's seed");
    experiment->callback([&] { run_experiment_cmd(spec_path, output_override, seed_override); });

    CLI::App* gadget = app.add_subcommand("gadget", "emit a star-augmented cubic graph");
    std::string gadget_name;
    double gadget_weight = 3.0;
    gadget->add_option("--name", gadget_name, "k4 | k33 | prism | cube | petersen")->required();
    gadget->add_option("--star-weight", gadget_weight, "center edge weight");
    gadget->add_option("--output", out_path, "output file (default stdout)");
    gadget->callback([&] { run_gadget(gadget_name, gadget_weight, out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
