#include "sbmssl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sbmssl/baselines.hpp"
#include "sbmssl/map_objective.hpp"
#include "sbmssl/rng.hpp"

namespace sbmssl {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sanitize_flag(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Algorithm1: return "algorithm1";
        case Algorithm::Algorithm1Perfect: return "algorithm1-perfect";
        case Algorithm::Spectral: return "spectral";
        case Algorithm::LabelSpreading: return "label-spreading";
        case Algorithm::BruteMap: return "brute-map";
    }
    throw std::logic_error("unreachable");
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "algorithm1") return Algorithm::Algorithm1;
    if (name == "algorithm1-perfect") return Algorithm::Algorithm1Perfect;
    if (name == "spectral") return Algorithm::Spectral;
    if (name == "label-spreading") return Algorithm::LabelSpreading;
    if (name == "brute-map") return Algorithm::BruteMap;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string scope_name(Scope s) {
    return s == Scope::UnlabeledOnly ? "unlabeled-only" : "all-nodes";
}

Scope parse_scope(const std::string& name) {
    if (name == "unlabeled-only") return Scope::UnlabeledOnly;
    if (name == "all-nodes") return Scope::AllNodes;
    throw std::invalid_argument("unknown scope: " + name);
}

void ExperimentSpec::validate() const {
    if (replications < 1) throw std::invalid_argument("spec: replications must be >= 1");
    if (n.empty() || p_in.empty() || p_out.empty())
        throw std::invalid_argument("spec: n, p_in and p_out grids must be non-empty");
    const bool frac_mode = !labeled_frac.empty();
    if (frac_mode && !eta.empty())
        throw std::invalid_argument("spec: give either eta/theta or labeled_frac/error_rate");
    if (!frac_mode && eta.empty())
        throw std::invalid_argument("spec: oracle grid missing (eta or labeled_frac)");
    if (algorithms.empty()) throw std::invalid_argument("spec: no algorithms selected");
    if (std::find(algorithms.begin(), algorithms.end(), Algorithm::BruteMap) != algorithms.end())
        for (std::int64_t nv : n)
            if (nv > 20) throw std::invalid_argument("spec: brute-map requires n <= 20");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("spec: beta must lie in (0,1)");
    if (alpha_policy != "spectral-norm" && alpha_policy != "mean-field")
        throw std::invalid_argument("spec: alpha_policy must be spectral-norm or mean-field");
}

double accuracy(const std::vector<std::int8_t>& pred, const std::vector<std::int8_t>& truth,
                const std::vector<std::int64_t>& scope, bool allow_flip) {
    if (pred.size() != truth.size()) throw std::invalid_argument("accuracy: length mismatch");
    if (scope.empty()) throw std::invalid_argument("accuracy: empty evaluation scope");
    std::int64_t match = 0;
    for (std::int64_t i : scope)
        match += pred[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(i)];
    const double a = static_cast<double>(match) / static_cast<double>(scope.size());
    return allow_flip ? std::max(a, 1.0 - a) : a;
}

std::uint64_t child_seed(std::uint64_t base_seed, const ModelParams& model,
                         std::int64_t replication) {
    std::uint64_t h = splitmix64(base_seed);
    h = seed_mix(h, static_cast<std::uint64_t>(model.n));
    h = seed_mix(h, std::bit_cast<std::uint64_t>(model.p_in));
    h = seed_mix(h, std::bit_cast<std::uint64_t>(model.p_out));
    h = seed_mix(h, std::bit_cast<std::uint64_t>(model.eta));
    h = seed_mix(h, std::bit_cast<std::uint64_t>(model.theta));
    h = seed_mix(h, static_cast<std::uint64_t>(replication));
    return h;
}

std::vector<ModelParams> expand_grid(const ExperimentSpec& spec) {
    spec.validate();
    const bool frac_mode = !spec.labeled_frac.empty();
    const std::vector<double> ax4 = frac_mode ? spec.labeled_frac : spec.eta;
    std::vector<double> ax5 = frac_mode ? spec.error_rate : spec.theta;
    if (ax5.empty()) ax5 = {0.0};

    auto make = [&](std::int64_t nv, double piv, double pov, double a4, double a5) {
        ModelParams m;
        m.n = nv;
        m.p_in = piv;
        m.p_out = pov;
        if (frac_mode) {
            m.eta = a4 * (1.0 - a5);
            m.theta = a4 * a5;
        } else {
            m.eta = a4;
            m.theta = a5;
        }
        m.validate();
        return m;
    };

    std::vector<ModelParams> grid;
    if (spec.coupled) {
        std::size_t len = 1;
        for (std::size_t l : {spec.n.size(), spec.p_in.size(), spec.p_out.size(), ax4.size(),
                              ax5.size()})
            len = std::max(len, l);
        auto pick = [len](const auto& v, std::size_t i) -> decltype(v[0]) {
            if (v.size() != 1 && v.size() != len)
                throw std::invalid_argument("spec: coupled lists must have equal length (or 1)");
            return v[v.size() == 1 ? 0 : i];
        };
        for (std::size_t i = 0; i < len; ++i)
            grid.push_back(make(pick(spec.n, i), pick(spec.p_in, i), pick(spec.p_out, i),
                                pick(ax4, i), pick(ax5, i)));
    } else {
        for (std::int64_t nv : spec.n)
            for (double piv : spec.p_in)
                for (double pov : spec.p_out)
                    for (double a4 : ax4)
                        for (double a5 : ax5) grid.push_back(make(nv, piv, pov, a4, a5));
    }
    return grid;
}

namespace {

struct TaskResult {
    std::vector<ResultRow> rows;
    TaskLabels labels;
};

std::vector<std::int64_t> scope_indices(const OracleLabels& oracle, Scope scope) {
    std::vector<std::int64_t> idx;
    if (scope == Scope::AllNodes) {
        idx.resize(oracle.s.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int64_t>(i);
    } else {
        for (std::size_t i = 0; i < oracle.s.size(); ++i)
            if (oracle.s[i] == 0) idx.push_back(static_cast<std::int64_t>(i));
    }
    return idx;
}

TaskResult run_task(const ExperimentSpec& spec, const ModelParams& model, std::int64_t rep,
                    bool keep_labels) {
    TaskResult result;
    const std::uint64_t seed = child_seed(spec.base_seed, model, rep);
    auto [graph, sigma0] = sample_ssbm(model, seed_mix(seed, 0x67), spec.balanced, spec.self_loops);
    OracleLabels oracle = sample_oracle(sigma0, model.eta, model.theta, seed_mix(seed, 0x6f));
    const std::uint64_t solver_seed = seed_mix(seed, 0x73);

    const double labeled_frac =
        static_cast<double>(oracle.num_labeled()) / static_cast<double>(model.n);
    std::int64_t wrong = 0;
    for (std::int64_t i : oracle.labeled)
        wrong += oracle.s[static_cast<std::size_t>(i)] != sigma0[static_cast<std::size_t>(i)];
    const double err_realized = oracle.num_labeled() > 0
                                    ? static_cast<double>(wrong) /
                                          static_cast<double>(oracle.num_labeled())
                                    : kNan;
    const std::vector<std::int64_t> scope = scope_indices(oracle, spec.scope);

    if (keep_labels) {
        result.labels.model = model;
        result.labels.replication = rep;
        result.labels.seed = seed;
        result.labels.sigma0 = sigma0;
        result.labels.oracle = oracle.s;
    }

    for (Algorithm alg : spec.algorithms) {
        ResultRow row;
        row.n = model.n;
        row.p_in = model.p_in;
        row.p_out = model.p_out;
        row.eta = model.eta;
        row.theta = model.theta;
        row.tau = kNan;
        row.lambda = kNan;
        row.alpha_policy = "-";
        row.algorithm = algorithm_name(alg);
        row.seed = seed;
        row.replication = rep;
        row.labeled_frac_realized = labeled_frac;
        row.error_rate_realized = err_realized;
        row.scope = scope_name(spec.scope);

        const auto t0 = std::chrono::steady_clock::now();
        try {
            std::vector<std::int8_t> pred;
            bool allow_flip = false;
            std::string flags;
            switch (alg) {
                case Algorithm::Algorithm1: {
                    AlgorithmOverrides ov;
                    ov.tau = spec.tau;
                    ov.lambda = spec.lambda;
                    if (spec.alpha)
                        ov.alpha = AlphaPolicy::explicit_value(*spec.alpha);
                    else if (spec.alpha_policy == "mean-field")
                        ov.alpha = AlphaPolicy::mean_field(model.alpha_mf());
                    SolverOptions opts;
                    opts.seed = solver_seed;
                    SslResult res = run_algorithm1(graph, oracle, model, ov, opts);
                    pred = res.score.labels;
                    row.tau = res.tau_used;
                    row.lambda = res.lambda_used;
                    row.alpha_policy = spec.alpha ? "explicit=" + fmt_double(*spec.alpha)
                                                  : spec.alpha_policy;
                    flags = "anchored";
                    if (!res.report.converged) flags += ";cg-not-converged";
                    break;
                }
                case Algorithm::Algorithm1Perfect: {
                    SslParams params;
                    params.tau = spec.tau ? *spec.tau : tau_of(model.p_in, model.p_out);
                    params.lambda = std::numeric_limits<double>::infinity();
                    params.alpha = spec.alpha ? AlphaPolicy::explicit_value(*spec.alpha)
                                   : spec.alpha_policy == "mean-field"
                                       ? AlphaPolicy::mean_field(model.alpha_mf())
                                       : AlphaPolicy::spectral_norm();
                    SolverOptions opts;
                    opts.seed = solver_seed;
                    SslResult res = solve_perfect(graph, oracle, params, opts);
                    pred = res.score.labels;
                    row.tau = res.tau_used;
                    row.lambda = res.lambda_used;
                    row.alpha_policy = spec.alpha ? "explicit=" + fmt_double(*spec.alpha)
                                                  : spec.alpha_policy;
                    flags = "anchored";
                    if (!res.report.converged) flags += ";cg-not-converged";
                    break;
                }
                case Algorithm::Spectral: {
                    BaselineConfig cfg;
                    cfg.seed = solver_seed;
                    BaselineResult res = spectral_clustering(graph, cfg);
                    pred = res.score.labels;
                    allow_flip = true;
                    flags = "flip-allowed";
                    if (res.degenerate) flags += ";degenerate-spectrum";
                    if (!res.converged) flags += ";not-converged";
                    break;
                }
                case Algorithm::LabelSpreading: {
                    BaselineConfig cfg;
                    cfg.beta = spec.beta;
                    cfg.seed = solver_seed;
                    BaselineResult res = label_spreading(graph, oracle, cfg);
                    pred = res.score.labels;
                    flags = "anchored;beta=" + fmt_double(spec.beta);
                    if (!res.converged) flags += ";not-converged";
                    break;
                }
                case Algorithm::BruteMap: {
                    MapObjectiveParams p;
                    p.tau = spec.tau ? *spec.tau : tau_of(model.p_in, model.p_out);
                    p.lambda = spec.lambda
                                   ? *spec.lambda
                                   : (model.eta + model.theta > 0.0
                                          ? lambda_of(model.eta, model.theta, model.p_in,
                                                      model.p_out)
                                          : 0.0);
                    pred = brute_force_map(graph, oracle, p);
                    row.tau = p.tau;
                    row.lambda = p.lambda;
                    allow_flip = oracle.num_labeled() == 0;
                    flags = allow_flip ? "flip-allowed" : "anchored";
                    break;
                }
            }
            row.accuracy = accuracy(pred, sigma0, scope, allow_flip);
            std::int64_t mis = 0;
            for (std::int64_t i : scope)
                mis += pred[static_cast<std::size_t>(i)] != sigma0[static_cast<std::size_t>(i)];
            if (allow_flip)
                mis = std::min(mis, static_cast<std::int64_t>(scope.size()) - mis);
            row.misclassified = mis;
            row.flags = flags;
            if (keep_labels)
                result.labels.predictions.emplace_back(row.algorithm, std::move(pred));
        } catch (const std::exception& e) {
            row.accuracy = kNan;
            row.misclassified = -1;
            row.flags = sanitize_flag(std::string("error:") + e.what());
        }
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int threads,
                                      std::vector<TaskLabels>* label_dump) {
    const std::vector<ModelParams> grid = expand_grid(spec);
    struct Task {
        const ModelParams* model;
        std::int64_t rep;
    };
    std::vector<Task> tasks;
    for (const ModelParams& m : grid)
        for (std::int64_t r = 0; r < spec.replications; ++r) tasks.push_back({&m, r});

    std::vector<TaskResult> results(tasks.size());
    const bool keep_labels = label_dump != nullptr;
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, static_cast<int>(tasks.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) break;
            results[k] = run_task(spec, *tasks[k].model, tasks[k].rep, keep_labels);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::vector<ResultRow> rows;
    rows.reserve(tasks.size() * spec.algorithms.size());
    for (TaskResult& r : results) {
        for (ResultRow& row : r.rows) rows.push_back(std::move(row));
        if (keep_labels) label_dump->push_back(std::move(r.labels));
    }
    return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "# sbm-ssl results schema v1\n";
    out << "n,p_in,p_out,eta,theta,tau,lambda,alpha_policy,algorithm,seed,replication,"
           "labeled_frac_realized,error_rate_realized,accuracy,misclassified,scope,runtime_ms,"
           "flags\n";
    for (const ResultRow& r : rows) {
        out << r.n << ',' << fmt_double(r.p_in) << ',' << fmt_double(r.p_out) << ','
            << fmt_double(r.eta) << ',' << fmt_double(r.theta) << ',' << fmt_double(r.tau) << ','
            << fmt_double(r.lambda) << ',' << r.alpha_policy << ',' << r.algorithm << ',' << r.seed
            << ',' << r.replication << ',' << fmt_double(r.labeled_frac_realized) << ','
            << fmt_double(r.error_rate_realized) << ',' << fmt_double(r.accuracy) << ','
            << r.misclassified << ',' << r.scope << ',' << fmt_double(r.runtime_ms) << ','
            << r.flags << '\n';
    }
}

std::vector<ResultRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv: " + path);
    std::string line;
    std::vector<ResultRow> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("n,p_in", 0) != 0)
                throw std::runtime_error("csv schema mismatch: unexpected header in " + path);
            header_seen = true;
            continue;
        }
        std::vector<std::string> f;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 18)
            throw std::runtime_error("csv schema mismatch: expected 18 fields, got " +
                                     std::to_string(f.size()));
        ResultRow r;
        r.n = std::stoll(f[0]);
        r.p_in = std::stod(f[1]);
        r.p_out = std::stod(f[2]);
        r.eta = std::stod(f[3]);
        r.theta = std::stod(f[4]);
        r.tau = std::stod(f[5]);
        r.lambda = std::stod(f[6]);
        r.alpha_policy = f[7];
        r.algorithm = f[8];
        r.seed = std::stoull(f[9]);
        r.replication = std::stoll(f[10]);
        r.labeled_frac_realized = std::stod(f[11]);
        r.error_rate_realized = std::stod(f[12]);
        r.accuracy = std::stod(f[13]);
        r.misclassified = std::stoll(f[14]);
        r.scope = f[15];
        r.runtime_ms = std::stod(f[16]);
        r.flags = f[17];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SummaryGroup> summarize(const std::vector<ResultRow>& rows) {
    using Key = std::tuple<std::int64_t, double, double, double, double, std::string, std::string>;
    std::map<Key, std::vector<double>> buckets;
    std::int64_t skipped = 0;
    for (const ResultRow& r : rows) {
        if (std::isnan(r.accuracy)) {
            ++skipped;
            continue;
        }
        buckets[{r.n, r.p_in, r.p_out, r.eta, r.theta, r.algorithm, r.scope}].push_back(
            r.accuracy);
    }
    if (skipped > 0)
        std::cerr << "warning: " << skipped << " failed row(s) omitted from the summary\n";
    std::vector<SummaryGroup> groups;
    for (const auto& [key, vals] : buckets) {
        SummaryGroup g;
        std::tie(g.n, g.p_in, g.p_out, g.eta, g.theta, g.algorithm, g.scope) = key;
        g.count = static_cast<std::int64_t>(vals.size());
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        g.mean_accuracy = mean;
        if (vals.size() > 1) {
            double ss = 0.0;
            for (double v : vals) ss += (v - mean) * (v - mean);
            g.stderr_accuracy = std::sqrt(ss / static_cast<double>(vals.size() - 1)) /
                                std::sqrt(static_cast<double>(vals.size()));
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

void print_summary_table(const std::vector<SummaryGroup>& groups, std::ostream& out) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%8s %9s %9s %7s %7s %-18s %-14s %5s %9s %9s\n", "n", "p_in",
                  "p_out", "eta", "theta", "algorithm", "scope", "count", "mean", "stderr");
    out << buf;
    for (const SummaryGroup& g : groups) {
        std::snprintf(buf, sizeof(buf), "%8lld %9.5g %9.5g %7.4g %7.4g %-18s %-14s %5lld %9.5f %9.5f\n",
                      static_cast<long long>(g.n), g.p_in, g.p_out, g.eta, g.theta,
                      g.algorithm.c_str(), g.scope.c_str(), static_cast<long long>(g.count),
                      g.mean_accuracy, g.stderr_accuracy);
        out << buf;
    }
}

std::string summary_to_json(const std::vector<SummaryGroup>& groups) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SummaryGroup& g : groups) {
        arr.push_back({{"n", g.n},
                       {"p_in", g.p_in},
                       {"p_out", g.p_out},
                       {"eta", g.eta},
                       {"theta", g.theta},
                       {"algorithm", g.algorithm},
                       {"scope", g.scope},
                       {"count", g.count},
                       {"mean_accuracy", g.mean_accuracy},
                       {"stderr_accuracy", g.stderr_accuracy}});
    }
    return arr.dump(2);
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string token;
    for (char c : value) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!token.empty()) out.push_back(std::move(token));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.push_back(std::move(token));
    return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("spec: key '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    ExperimentSpec spec;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto doubles = [&]() {
            std::vector<double> out;
            for (const std::string& t : split_list(value)) out.push_back(std::stod(t));
            return out;
        };

        if (key == "n") {
            for (const std::string& t : split_list(value)) spec.n.push_back(std::stoll(t));
        } else if (key == "p_in") {
            spec.p_in = doubles();
        } else if (key == "p_out") {
            spec.p_out = doubles();
        } else if (key == "eta") {
            spec.eta = doubles();
        } else if (key == "theta") {
            spec.theta = doubles();
        } else if (key == "labeled_frac") {
            spec.labeled_frac = doubles();
        } else if (key == "error_rate") {
            spec.error_rate = doubles();
        } else if (key == "algorithms") {
            for (const std::string& t : split_list(value))
                spec.algorithms.push_back(parse_algorithm(t));
        } else if (key == "replications") {
            spec.replications = std::stoll(value);
        } else if (key == "base_seed") {
            spec.base_seed = std::stoull(value);
        } else if (key == "coupled") {
            spec.coupled = parse_bool(value, key);
        } else if (key == "balanced") {
            spec.balanced = parse_bool(value, key);
        } else if (key == "self_loops") {
            spec.self_loops = parse_bool(value, key);
        } else if (key == "scope") {
            spec.scope = parse_scope(value);
        } else if (key == "tau") {
            spec.tau = std::stod(value);
        } else if (key == "lambda") {
            spec.lambda = std::stod(value);
        } else if (key == "alpha") {
            spec.alpha = std::stod(value);
        } else if (key == "alpha_policy") {
            spec.alpha_policy = value;
        } else if (key == "beta") {
            spec.beta = std::stod(value);
        } else if (key == "output") {
            spec.output = value;
        } else if (key == "dump_labels") {
            spec.dump_labels = parse_bool(value, key);
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }
    spec.validate();
    return spec;
}

void write_label_dump(const std::vector<TaskLabels>& dump, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open label dump for writing: " + path);
    out << "# sbm-ssl label dump v1\n";
    out << "n,p_in,p_out,eta,theta,seed,replication,node,sigma0,oracle";
    std::vector<std::string> algs;
    if (!dump.empty())
        for (const auto& [name, pred] : dump.front().predictions) {
            out << ",pred_" << name;
            algs.push_back(name);
        }
    out << '\n';
    for (const TaskLabels& t : dump) {
        for (std::size_t i = 0; i < t.sigma0.size(); ++i) {
            out << t.model.n << ',' << fmt_double(t.model.p_in) << ',' << fmt_double(t.model.p_out)
                << ',' << fmt_double(t.model.eta) << ',' << fmt_double(t.model.theta) << ','
                << t.seed << ',' << t.replication << ',' << i << ','
                << static_cast<int>(t.sigma0[i]) << ',' << static_cast<int>(t.oracle[i]);
            for (const std::string& a : algs) {
                const auto it =
                    std::find_if(t.predictions.begin(), t.predictions.end(),
                                 [&a](const auto& p) { return p.first == a; });
                out << ',' << (it != t.predictions.end() ? static_cast<int>(it->second[i]) : 0);
            }
            out << '\n';
        }
    }
}

}  // namespace sbmssl
