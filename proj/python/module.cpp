#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbmssl/baselines.hpp"
#include "sbmssl/harness.hpp"
#include "sbmssl/linalg.hpp"
#include "sbmssl/map_objective.hpp"
#include "sbmssl/meanfield.hpp"
#include "sbmssl/oracle.hpp"
#include "sbmssl/ssl.hpp"

namespace py = pybind11;
using namespace sbmssl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "MAP-derived semi-supervised community detection on SBM graphs";

    py::register_exception<IndefiniteOperatorError>(m, "IndefiniteOperatorError");
    py::register_exception<EdgeListFormatError>(m, "EdgeListFormatError");

    py::class_<SparseGraph>(m, "SparseGraph")
        .def(py::init([](std::int64_t n, const std::vector<std::tuple<std::int64_t, std::int64_t, double>>& edges) {
                 std::vector<Edge> es;
                 es.reserve(edges.size());
                 for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
                 return SparseGraph(n, es);
             }),
             py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &SparseGraph::n)
        .def_property_readonly("num_edges", &SparseGraph::num_edges)
        .def_property_readonly("degrees", [](const SparseGraph& g) { return g.degrees(); })
        .def("weight", &SparseGraph::weight)
        .def("edges",
             [](const SparseGraph& g) {
                 std::vector<std::tuple<std::int64_t, std::int64_t, double>> out;
                 g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
                     out.emplace_back(u, v, w);
                 });
                 return out;
             })
        .def("__eq__", [](const SparseGraph& a, const SparseGraph& b) { return a == b; });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](std::int64_t n, double p_in, double p_out, double eta, double theta) {
                 ModelParams p{n, p_in, p_out, eta, theta};
                 p.validate();
                 return p;
             }),
             py::arg("n"), py::arg("p_in"), py::arg("p_out"), py::arg("eta") = 0.0,
             py::arg("theta") = 0.0)
        .def_readonly("n", &ModelParams::n)
        .def_readonly("p_in", &ModelParams::p_in)
        .def_readonly("p_out", &ModelParams::p_out)
        .def_readonly("eta", &ModelParams::eta)
        .def_readonly("theta", &ModelParams::theta)
        .def_property_readonly("d", &ModelParams::d)
        .def_property_readonly("alpha_mf", &ModelParams::alpha_mf)
        .def_property_readonly("s", &ModelParams::s)
        .def_property_readonly("informative", &ModelParams::informative);

    py::class_<OracleLabels>(m, "OracleLabels")
        .def_static("from_vector", &OracleLabels::from_vector)
        .def_readonly("s", &OracleLabels::s)
        .def_readonly("labeled", &OracleLabels::labeled)
        .def_property_readonly("num_labeled", &OracleLabels::num_labeled);

    m.def("sample_ssbm", &sample_ssbm, py::arg("params"), py::arg("seed"),
          py::arg("balanced") = true, py::arg("self_loops") = false);
    m.def("degree_regularize", &degree_regularize);
    m.def("load_edge_list", &load_edge_list);
    m.def("save_edge_list", &save_edge_list);
    m.def("sample_oracle", &sample_oracle, py::arg("sigma0"), py::arg("eta"), py::arg("theta"),
          py::arg("seed"));
    m.def("error_rate", &error_rate);
    m.def("informative", &informative);

    m.def("tau_of", &tau_of);
    m.def("lambda_of", &lambda_of);

    py::class_<AlphaPolicy>(m, "AlphaPolicy")
        .def_static("spectral_norm", &AlphaPolicy::spectral_norm)
        .def_static("mean_field", &AlphaPolicy::mean_field)
        .def_static("explicit_value", &AlphaPolicy::explicit_value);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("residual", &SolveReport::residual)
        .def_readonly("converged", &SolveReport::converged);

    py::class_<ScoreVector>(m, "ScoreVector")
        .def_readonly("x", &ScoreVector::x)
        .def_readonly("labels", &ScoreVector::labels);

    py::class_<SslResult>(m, "SslResult")
        .def_readonly("score", &SslResult::score)
        .def_readonly("report", &SslResult::report)
        .def_readonly("alpha_used", &SslResult::alpha_used)
        .def_readonly("tau_used", &SslResult::tau_used)
        .def_readonly("lambda_used", &SslResult::lambda_used)
        .def_readonly("norm_scale", &SslResult::norm_scale);

    auto make_params = [](double tau, double lambda, const AlphaPolicy& alpha) {
        SslParams p;
        p.tau = tau;
        p.lambda = lambda;
        p.alpha = alpha;
        return p;
    };
    m.def(
        "solve_noisy",
        [make_params](const SparseGraph& g, const OracleLabels& s, double tau, double lambda,
                      const AlphaPolicy& alpha, std::uint64_t seed) {
            SolverOptions opts;
            opts.seed = seed;
            return solve_noisy(g, s, make_params(tau, lambda, alpha), opts);
        },
        py::arg("graph"), py::arg("oracle"), py::arg("tau"), py::arg("lambda_"),
        py::arg("alpha") = AlphaPolicy::spectral_norm(), py::arg("seed") = 1);
    m.def(
        "solve_perfect",
        [make_params](const SparseGraph& g, const OracleLabels& s, double tau,
                      const AlphaPolicy& alpha, std::uint64_t seed) {
            SolverOptions opts;
            opts.seed = seed;
            return solve_perfect(
                g, s, make_params(tau, std::numeric_limits<double>::infinity(), alpha), opts);
        },
        py::arg("graph"), py::arg("oracle"), py::arg("tau"),
        py::arg("alpha") = AlphaPolicy::spectral_norm(), py::arg("seed") = 1);
    m.def(
        "run_algorithm1",
        [](const SparseGraph& g, const OracleLabels& s, const ModelParams& model,
           std::optional<double> tau, std::optional<double> lambda,
           std::optional<AlphaPolicy> alpha, std::uint64_t seed) {
            AlgorithmOverrides ov{tau, lambda, alpha};
            SolverOptions opts;
            opts.seed = seed;
            return run_algorithm1(g, s, model, ov, opts);
        },
        py::arg("graph"), py::arg("oracle"), py::arg("model"), py::arg("tau") = std::nullopt,
        py::arg("lambda_") = std::nullopt, py::arg("alpha") = std::nullopt, py::arg("seed") = 1);
    m.def("relaxation_objective", &relaxation_objective, py::arg("graph"), py::arg("x"),
          py::arg("oracle"), py::arg("tau"), py::arg("lambda_"), py::arg("check_norm") = true);

    m.def("cut", &cut);
    m.def(
        "map_objective",
        [](const SparseGraph& g, const Assignment& a, const OracleLabels& s, double tau,
           double lambda) { return map_objective(g, a, s, {tau, lambda}); },
        py::arg("graph"), py::arg("assignment"), py::arg("oracle"), py::arg("tau"),
        py::arg("lambda_"));
    m.def("map_objective_constrained", &map_objective_constrained);
    m.def("log_posterior", &log_posterior);
    m.def(
        "brute_force_map",
        [](const SparseGraph& g, const OracleLabels& s, double tau, double lambda,
           std::int64_t max_n) { return brute_force_map(g, s, MapObjectiveParams{tau, lambda}, max_n); },
        py::arg("graph"), py::arg("oracle"), py::arg("tau"), py::arg("lambda_"),
        py::arg("max_n") = 20);
    m.def("generalized_modularity", &generalized_modularity);

    py::class_<MeanFieldSolution>(m, "MeanFieldSolution")
        .def_readonly("gamma1", &MeanFieldSolution::gamma1)
        .def_readonly("gamma2", &MeanFieldSolution::gamma2)
        .def_readonly("delta", &MeanFieldSolution::delta)
        .def_readonly("alpha_mf", &MeanFieldSolution::alpha_mf)
        .def_readonly("s", &MeanFieldSolution::s);
    py::class_<ClassificationReport>(m, "ClassificationReport")
        .def_readonly("unlabeled_ok", &ClassificationReport::unlabeled_ok)
        .def_readonly("correct_labeled_ok", &ClassificationReport::correct_labeled_ok)
        .def_readonly("wrong_labeled_ok", &ClassificationReport::wrong_labeled_ok);
    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("t1_plus", &Spectrum::t1_plus)
        .def_readonly("t1_minus", &Spectrum::t1_minus)
        .def_readonly("t2_plus", &Spectrum::t2_plus)
        .def_readonly("t2_minus", &Spectrum::t2_minus)
        .def_readonly("alpha_mf", &Spectrum::alpha_mf)
        .def_readonly("m", &Spectrum::m)
        .def_readonly("eigenvalues", &Spectrum::eigenvalues);

    m.def("meanfield_solution", &meanfield_solution);
    m.def("classification_conditions", &classification_conditions);
    m.def("mf_spectrum", &mf_spectrum);
    m.def("spectral_gap", &spectral_gap);
    m.def("concentration_bound", &concentration_bound);
    m.def("misclassification_bound", &misclassification_bound);
    m.def("misclassification_bound_asymptotic", &misclassification_bound_asymptotic);
    m.def("snr", &snr);
    m.def(
        "empirical_concentration",
        [](const SparseGraph& g, const std::vector<std::int8_t>& sigma0, const OracleLabels& s,
           const ModelParams& model, double lambda, std::uint64_t seed) {
            SolverOptions opts;
            opts.seed = seed;
            return empirical_concentration(g, sigma0, s, model, lambda, opts);
        },
        py::arg("graph"), py::arg("sigma0"), py::arg("oracle"), py::arg("model"),
        py::arg("lambda_"), py::arg("seed") = 1);
    m.def("expected_adjacency", &expected_adjacency);
    m.def("mean_field_graph", &mean_field_graph);

    py::class_<BaselineResult>(m, "BaselineResult")
        .def_readonly("score", &BaselineResult::score)
        .def_readonly("iterations", &BaselineResult::iterations)
        .def_readonly("converged", &BaselineResult::converged)
        .def_readonly("degenerate", &BaselineResult::degenerate);
    m.def(
        "spectral_clustering",
        [](const SparseGraph& g, double tol, std::int64_t max_iter, std::uint64_t seed) {
            BaselineConfig cfg;
            cfg.eig_tol = tol;
            cfg.max_iter = max_iter;
            cfg.seed = seed;
            return spectral_clustering(g, cfg);
        },
        py::arg("graph"), py::arg("tol") = 1e-8, py::arg("max_iter") = 50000, py::arg("seed") = 1);
    m.def(
        "label_spreading",
        [](const SparseGraph& g, const OracleLabels& s, double beta, std::int64_t max_iter) {
            BaselineConfig cfg;
            cfg.beta = beta;
            cfg.max_iter = max_iter;
            return label_spreading(g, s, cfg);
        },
        py::arg("graph"), py::arg("oracle"), py::arg("beta") = 0.9, py::arg("max_iter") = 50000);

    m.def("accuracy", &accuracy, py::arg("pred"), py::arg("truth"), py::arg("scope"),
          py::arg("allow_flip"));
    m.def("dense_sym_eigen", &dense_sym_eigen);
}
