#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "sbmssl/baselines.hpp"
#include "sbmssl/harness.hpp"
#include "sbmssl/meanfield.hpp"
#include "sbmssl/ssl.hpp"

namespace {

using namespace sbmssl;

std::vector<std::int8_t> load_label_file(const std::string& path, std::int64_t n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file: " + path);
    std::vector<std::int8_t> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ss(line);
        int v;
        while (ss >> v) {
            if (v != -1 && v != 0 && v != 1)
                throw std::runtime_error(path + ": labels must be -1, 0 or +1");
            labels.push_back(static_cast<std::int8_t>(v));
        }
    }
    if (static_cast<std::int64_t>(labels.size()) != n)
        throw std::runtime_error(path + ": expected " + std::to_string(n) + " labels, got " +
                                 std::to_string(labels.size()));
    return labels;
}

int cmd_run(const std::string& spec_path, const std::string& output_override, int threads,
            bool dump_labels) {
    ExperimentSpec spec = parse_spec_file(spec_path);
    if (!output_override.empty()) spec.output = output_override;
    if (dump_labels) spec.dump_labels = true;

    std::vector<TaskLabels> label_dump;
    std::vector<ResultRow> rows =
        run_experiment(spec, threads, spec.dump_labels ? &label_dump : nullptr);

    if (spec.output.empty()) {
        write_csv(rows, std::cout);
    } else {
        std::ofstream out(spec.output);
        if (!out) throw std::runtime_error("cannot open output: " + spec.output);
        write_csv(rows, out);
        std::cerr << rows.size() << " rows -> " << spec.output << "\n";
    }
    if (spec.dump_labels) {
        const std::string path =
            spec.output.empty() ? "labels.csv" : spec.output + ".labels.csv";
        write_label_dump(label_dump, path);
        std::cerr << "labels -> " << path << "\n";
    }
    return 0;
}

int cmd_summarize(const std::string& csv_path, const std::string& json_path) {
    const auto groups = summarize(read_csv(csv_path));
    print_summary_table(groups, std::cout);
    const std::string json = summary_to_json(groups);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open output: " + json_path);
        out << json << "\n";
    } else {
        std::cout << json << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& graph_path, const std::string& labels_path, double tau,
              double lambda, double alpha, bool perfect, std::uint64_t seed,
              const std::string& out_path) {
    const SparseGraph g = load_edge_list(graph_path);
    const OracleLabels s = OracleLabels::from_vector(load_label_file(labels_path, g.n()));

    SslParams params;
    params.tau = tau;
    params.lambda = perfect ? std::numeric_limits<double>::infinity() : lambda;
    params.alpha = alpha > 0.0 ? AlphaPolicy::explicit_value(alpha) : AlphaPolicy::spectral_norm();
    SolverOptions opts;
    opts.seed = seed;

    const SslResult res = std::isinf(params.lambda) ? solve_perfect(g, s, params, opts)
                                                    : solve_noisy(g, s, params, opts);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output: " + out_path);
        out = &file;
    }
    *out << "# node,score,label\n";
    for (std::size_t i = 0; i < res.score.x.size(); ++i)
        *out << i << ',' << res.score.x[i] << ',' << static_cast<int>(res.score.labels[i]) << '\n';
    std::cerr << "alpha=" << res.alpha_used << " iterations=" << res.report.iterations
              << " residual=" << res.report.residual << " norm_scale=" << res.norm_scale << "\n";
    return 0;
}

int cmd_meanfield(std::int64_t n, double p_in, double p_out, double eta, double theta,
                  double lambda_opt, double tau_opt, const std::vector<double>& cs, bool json) {
    ModelParams model{n, p_in, p_out, eta, theta};
    model.validate();
    const double tau = tau_opt >= 0.0 ? tau_opt : tau_of(p_in, p_out);
    const double lambda =
        lambda_opt >= 0.0 ? lambda_opt : lambda_of(eta, theta, p_in, p_out);

    const MeanFieldSolution mf = meanfield_solution(model, lambda);
    const ClassificationReport cls = classification_conditions(model, lambda);
    const Spectrum sp = mf_spectrum(model, lambda, tau);
    const double gap = spectral_gap(model, lambda);

    if (json) {
        std::cout << "{\n"
                  << "  \"tau\": " << tau << ",\n  \"lambda\": " << lambda
                  << ",\n  \"s\": " << mf.s << ",\n  \"d\": " << model.d()
                  << ",\n  \"alpha_mf\": " << mf.alpha_mf << ",\n  \"gamma1\": " << mf.gamma1
                  << ",\n  \"gamma2\": " << mf.gamma2 << ",\n  \"delta\": " << mf.delta
                  << ",\n  \"unlabeled_ok\": " << (cls.unlabeled_ok ? "true" : "false")
                  << ",\n  \"correct_labeled_ok\": " << (cls.correct_labeled_ok ? "true" : "false")
                  << ",\n  \"wrong_labeled_ok\": " << (cls.wrong_labeled_ok ? "true" : "false")
                  << ",\n  \"t1_plus\": " << sp.t1_plus << ",\n  \"t1_minus\": " << sp.t1_minus
                  << ",\n  \"t2_plus\": " << sp.t2_plus << ",\n  \"t2_minus\": " << sp.t2_minus
                  << ",\n  \"spectral_gap\": " << gap << ",\n  \"bounds\": [";
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "{\"C\": " << cs[i] << ", \"concentration\": "
                      << concentration_bound(model, lambda, cs[i]) << ", \"misclassification\": "
                      << std::min(1.0, misclassification_bound(model, lambda, cs[i]))
                      << ", \"misclassification_asymptotic\": "
                      << std::min(1.0, misclassification_bound_asymptotic(model, cs[i])) << "}";
        }
        std::cout << "]\n}\n";
        return 0;
    }

    std::cout << "tau     = " << tau << "\nlambda  = " << lambda << "\ns       = " << mf.s
              << "\nd       = " << model.d() << "\nalpha_mf= " << mf.alpha_mf
              << "\ngamma1  = " << mf.gamma1 << "\ngamma2  = " << mf.gamma2
              << "\ndelta   = " << mf.delta << "\n"
              << "classification: unlabeled " << (cls.unlabeled_ok ? "ok" : "MISCLASSIFIED")
              << ", correctly labeled " << (cls.correct_labeled_ok ? "ok" : "MISCLASSIFIED")
              << ", wrongly labeled " << (cls.wrong_labeled_ok ? "recovered" : "kept wrong")
              << "\n"
              << "spectrum quartet: t1+=" << sp.t1_plus << " t1-=" << sp.t1_minus
              << " t2+=" << sp.t2_plus << " t2-=" << sp.t2_minus << "\nspectral gap = " << gap
              << "\n";
    for (double c : cs)
        std::cout << "C=" << c << ": concentration <= " << concentration_bound(model, lambda, c)
                  << ", misclassified fraction <= "
                  << std::min(1.0, misclassification_bound(model, lambda, c))
                  << " (lambda>>alpha_mf form: "
                  << std::min(1.0, misclassification_bound_asymptotic(model, c)) << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MAP-derived semi-supervised community detection on SBM graphs"};
    app.require_subcommand(1);

    std::string spec_path, output_override;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    bool dump_labels = false;
    auto* run = app.add_subcommand("run", "run an experiment sweep from a spec file");
    run->add_option("--spec", spec_path, "spec file (key = value)")->required();
    run->add_option("--output", output_override, "override the spec's output csv path");
    run->add_option("--threads", threads, "worker threads (default: hardware)");
    run->add_flag("--dump-labels", dump_labels, "also write per-node labels");

    std::string csv_path, json_path;
    auto* summ = app.add_subcommand("summarize", "grouped means and standard errors of a result csv");
    summ->add_option("csv", csv_path, "result csv")->required();
    summ->add_option("--json", json_path, "write the machine-readable summary here");

    std::string graph_path, labels_path, solve_out;
    double tau = 0.0, lambda = 0.0, alpha = 0.0;
    bool perfect = false;
    std::uint64_t seed = 1;
    auto* solve = app.add_subcommand("solve", "label a graph from an edge list and oracle labels");
    solve->add_option("--graph", graph_path, "edge list file (# n=<n> header)")->required();
    solve->add_option("--labels", labels_path, "oracle labels, one of {-1,0,1} per node")->required();
    solve->add_option("--tau", tau, "balance regularization weight")->required();
    solve->add_option("--lambda", lambda, "oracle fidelity weight (ignored with --perfect)");
    solve->add_flag("--perfect", perfect, "clamp labeled nodes (perfect-oracle path)");
    solve->add_option("--alpha", alpha, "explicit shift (default: spectral norm of A_tau)");
    solve->add_option("--seed", seed, "seed for the spectral-norm start vector");
    solve->add_option("--out", solve_out, "output csv (default: stdout)");

    std::int64_t n = 0;
    double p_in = 0.0, p_out = 0.0, eta = 0.0, theta = 0.0;
    double lambda_opt = -1.0, tau_opt = -1.0;
    std::vector<double> cs{1.0, 10.0};
    bool json = false;
    auto* mf = app.add_subcommand("meanfield", "closed-form solution, spectrum and bounds");
    mf->add_option("--n", n)->required();
    mf->add_option("--p-in", p_in)->required();
    mf->add_option("--p-out", p_out)->required();
    mf->add_option("--eta", eta)->required();
    mf->add_option("--theta", theta)->required();
    mf->add_option("--lambda", lambda_opt, "override (default: from the model parameters)");
    mf->add_option("--tau", tau_opt, "override (default: from the model parameters)");
    mf->add_option("--c", cs, "bound constants to report");
    mf->add_flag("--json", json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(spec_path, output_override, threads, dump_labels);
        if (summ->parsed()) return cmd_summarize(csv_path, json_path);
        if (solve->parsed())
            return cmd_solve(graph_path, labels_path, tau, lambda, alpha, perfect, seed, solve_out);
        if (mf->parsed())
            return cmd_meanfield(n, p_in, p_out, eta, theta, lambda_opt, tau_opt, cs, json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
