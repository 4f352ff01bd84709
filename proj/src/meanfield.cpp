#include "sbmssl/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbmssl/linalg.hpp"

namespace sbmssl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_even(const ModelParams& model, const char* who) {
    if (model.n % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": mean-field analysis requires even n");
}

}  // namespace

MeanFieldSolution meanfield_solution(const ModelParams& model, double lambda) {
    model.validate();
    require_even(model, "meanfield_solution");
    if (model.eta + model.theta <= 0.0)
        throw std::invalid_argument("meanfield_solution: no oracle (eta + theta = 0)");
    if (lambda == 0.0)
        throw std::invalid_argument(
            "meanfield_solution: lambda = 0 recovers spectral clustering (X proportional to "
            "sigma0); no finite gammas");
    if (lambda < 0.0) throw std::invalid_argument("meanfield_solution: lambda must be positive");

    MeanFieldSolution out;
    out.s = model.s();
    out.alpha_mf = model.alpha_mf();
    out.delta = 1.0 - 2.0 * out.s;
    if (std::isinf(lambda)) {
        out.gamma1 = -1.0;
        out.gamma2 = 1.0;
    } else {
        out.gamma1 = (-lambda + out.delta * out.alpha_mf) / (lambda + out.alpha_mf);
        out.gamma2 = (lambda + out.delta * out.alpha_mf) / (lambda + out.alpha_mf);
    }
    return out;
}

ClassificationReport classification_conditions(const ModelParams& model, double lambda) {
    const MeanFieldSolution mf = meanfield_solution(model, lambda);
    return {mf.delta > 0.0, mf.gamma2 > 0.0, mf.gamma1 > 0.0};
}

Spectrum mf_spectrum(const ModelParams& model, double lambda, double tau) {
    model.validate();
    require_even(model, "mf_spectrum");
    if (lambda < 0.0) throw std::invalid_argument("mf_spectrum: lambda must be nonnegative");
    const double n = static_cast<double>(model.n);
    const double m = (model.eta + model.theta) * n;

    Spectrum sp;
    sp.alpha_mf = model.alpha_mf();
    sp.lambda = lambda;
    sp.m = m;

    // rank-2 block eigenvalues of E A_tau: (n/2)(a +- b) with
    // a = p_in - tau, b = p_out - tau
    const double sum_eig = n / 2.0 * (model.p_in + model.p_out - 2.0 * tau);  // d - n tau
    const double diff_eig = sp.alpha_mf;                                      // tau cancels
    auto quartet = [&](double block_eig, double& plus, double& minus) {
        const double disc =
            (lambda + block_eig) * (lambda + block_eig) - 4.0 * block_eig * lambda * (m / n);
        if (disc < 0.0)
            throw std::logic_error("mf_spectrum: negative discriminant (inadmissible parameters)");
        const double r = std::sqrt(disc);
        plus = 0.5 * (block_eig - lambda + r);
        minus = 0.5 * (block_eig - lambda - r);
    };
    quartet(sum_eig, sp.t1_plus, sp.t1_minus);
    quartet(diff_eig, sp.t2_plus, sp.t2_minus);

    const double m_round = std::round(m);
    if (std::abs(m - m_round) < 1e-9 && m_round >= 2.0 && m_round <= n - 2.0) {
        const std::int64_t mi = static_cast<std::int64_t>(m_round);
        sp.eigenvalues.reserve(static_cast<std::size_t>(model.n));
        sp.eigenvalues = {sp.alpha_mf - sp.t1_plus, sp.alpha_mf - sp.t1_minus,
                          sp.alpha_mf - sp.t2_plus, sp.alpha_mf - sp.t2_minus};
        sp.eigenvalues.insert(sp.eigenvalues.end(), static_cast<std::size_t>(model.n - mi - 2),
                              sp.alpha_mf);
        sp.eigenvalues.insert(sp.eigenvalues.end(), static_cast<std::size_t>(mi - 2),
                              sp.alpha_mf + lambda);
        std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end());
    }
    return sp;
}

double spectral_gap(const ModelParams& model, double lambda) {
    model.validate();
    if (lambda < 0.0) throw std::invalid_argument("spectral_gap: lambda must be nonnegative");
    const double amf = model.alpha_mf();
    if (lambda == 0.0) return 0.0;
    if (std::isinf(lambda)) return (model.eta + model.theta) * amf;  // large-lambda limit
    const double frac = 4.0 * lambda * amf * (model.eta + model.theta) / ((lambda + amf) * (lambda + amf));
    return (amf + lambda) / 2.0 * (1.0 - std::sqrt(1.0 - frac));
}

double concentration_bound(const ModelParams& model, double lambda, double C) {
    model.validate();
    if (!(C > 0.0)) throw std::invalid_argument("concentration_bound: C must be positive");
    const double labeled = model.eta + model.theta;
    if (lambda <= 0.0 || labeled <= 0.0) return kInf;
    const double amf = model.alpha_mf();
    if (std::isinf(lambda)) return C * std::sqrt(model.d()) / (2.0 * labeled * amf);
    const double inner = 1.0 - std::sqrt(1.0 - 4.0 * labeled * lambda * amf /
                                                   ((lambda + amf) * (lambda + amf)));
    return C / inner * std::sqrt(model.d()) / (amf + lambda);
}

double misclassification_bound(const ModelParams& model, double lambda, double C) {
    const double b = concentration_bound(model, lambda, 1.0);
    if (std::isinf(b)) return kInf;
    return C * b * b;
}

double misclassification_bound_asymptotic(const ModelParams& model, double C) {
    model.validate();
    if (!(C > 0.0)) throw std::invalid_argument("bound: C must be positive");
    const double labeled = model.eta + model.theta;
    if (labeled <= 0.0 || model.p_in <= model.p_out) return kInf;
    const double ratio = (model.p_in + model.p_out) / (model.p_in - model.p_out);
    return C * ratio * ratio / (4.0 * labeled * labeled * model.d());
}

double snr(double c_in, double c_out) {
    if (!(c_in > c_out && c_out > 0.0))
        throw std::domain_error("snr: requires c_in > c_out > 0");
    return (c_in - c_out) * (c_in - c_out) / (c_in + c_out);
}

Eigen::MatrixXd expected_adjacency(const ModelParams& model) {
    model.validate();
    require_even(model, "expected_adjacency");
    const std::int64_t n = model.n, h = n / 2;
    Eigen::MatrixXd ea(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            ea(i, j) = ((i < h) == (j < h)) ? model.p_in : model.p_out;
    return ea;
}

SparseGraph mean_field_graph(const ModelParams& model) {
    model.validate();
    require_even(model, "mean_field_graph");
    const std::int64_t n = model.n, h = n / 2;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i; j < n; ++j)
            edges.push_back({i, j, ((i < h) == (j < h)) ? model.p_in : model.p_out});
    return SparseGraph(n, edges);
}

std::vector<std::uint8_t> prop3_labeled_mask(std::int64_t n, std::int64_t m) {
    if (m < 0 || m > n || m % 2 != 0)
        throw std::invalid_argument("prop3_labeled_mask: m must be even and within [0, n]");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < m / 2; ++i) {
        mask[static_cast<std::size_t>(i)] = 1;
        mask[static_cast<std::size_t>(n - 1 - i)] = 1;
    }
    return mask;
}

Eigen::MatrixXd expected_system_matrix(const ModelParams& model, double lambda, double tau,
                                       const std::vector<std::uint8_t>& labeled_mask) {
    const std::int64_t n = model.n;
    if (static_cast<std::int64_t>(labeled_mask.size()) != n)
        throw std::invalid_argument("expected_system_matrix: mask length mismatch");
    Eigen::MatrixXd m = -expected_adjacency(model);
    m.array() += tau;
    m.diagonal().array() += model.alpha_mf();
    for (std::int64_t i = 0; i < n; ++i)
        if (labeled_mask[static_cast<std::size_t>(i)]) m(i, i) += lambda;
    return m;
}

std::vector<double> mean_field_vector(const std::vector<std::int8_t>& sigma0,
                                      const OracleLabels& s, const MeanFieldSolution& mf) {
    if (sigma0.size() != s.s.size())
        throw std::invalid_argument("mean_field_vector: length mismatch");
    std::vector<double> x(sigma0.size());
    for (std::size_t i = 0; i < sigma0.size(); ++i) {
        double coeff = mf.delta;
        if (s.s[i] != 0) coeff = (s.s[i] == sigma0[i]) ? mf.gamma2 : mf.gamma1;
        x[i] = coeff * static_cast<double>(sigma0[i]);
    }
    return x;
}

double empirical_concentration(const SparseGraph& g, const std::vector<std::int8_t>& sigma0,
                               const OracleLabels& s, const ModelParams& model, double lambda,
                               const SolverOptions& opts) {
    if (model.eta + model.theta <= 0.0)
        throw std::invalid_argument("empirical_concentration: no labels, no mean field");
    const MeanFieldSolution mf = meanfield_solution(model, lambda);
    const std::vector<double> xmf = mean_field_vector(sigma0, s, mf);

    SslParams params;
    params.tau = tau_of(model.p_in, model.p_out);
    params.lambda = lambda;
    params.alpha = AlphaPolicy::spectral_norm();
    const SslResult res = solve_noisy(g, s, params, opts);

    double nmf = 0.0, nx = 0.0;
    for (std::size_t i = 0; i < xmf.size(); ++i) {
        nmf += xmf[i] * xmf[i];
        nx += res.score.x[i] * res.score.x[i];
    }
    nmf = std::sqrt(nmf);
    nx = std::sqrt(nx);
    if (nx == 0.0) return 1.0;  // zero solve: maximal relative distance after rescaling
    const double scale = nmf / nx;
    double dist = 0.0;
    for (std::size_t i = 0; i < xmf.size(); ++i) {
        const double diff = scale * res.score.x[i] - xmf[i];
        dist += diff * diff;
    }
    return std::sqrt(dist) / nmf;
}

}  // namespace sbmssl
