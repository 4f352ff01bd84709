#include "sbmssl/ssl.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sbmssl {

namespace {

double log_odds_ratio(double p_in, double p_out) {
    if (!(p_out > 0.0 && p_in > p_out && p_in < 1.0))
        throw std::domain_error("requires 0 < p_out < p_in < 1");
    return std::log(p_in * (1.0 - p_out) / (p_out * (1.0 - p_in)));
}

std::vector<std::uint8_t> labeled_mask(const OracleLabels& s) {
    std::vector<std::uint8_t> mask(s.s.size(), 0);
    for (std::int64_t i : s.labeled) mask[static_cast<std::size_t>(i)] = 1;
    return mask;
}

double resolve_alpha(const SparseGraph& g, double tau, const AlphaPolicy& policy,
                     const SolverOptions& opts) {
    switch (policy.kind) {
        case AlphaPolicy::Kind::SpectralNorm: {
            auto est = spectral_norm(shifted_adjacency_operator(g, tau), opts.sn_tol,
                                     opts.sn_max_iter, opts.seed);
            return est.value;
        }
        case AlphaPolicy::Kind::MeanField:
        case AlphaPolicy::Kind::Explicit:
            if (!(policy.value > 0.0))
                throw std::invalid_argument("alpha policy: explicit alpha must be positive");
            return policy.value;
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double tau_of(double p_in, double p_out) {
    const double denom = log_odds_ratio(p_in, p_out);
    return std::log((1.0 - p_out) / (1.0 - p_in)) / denom;
}

double lambda_of(double eta, double theta, double p_in, double p_out) {
    const double denom = log_odds_ratio(p_in, p_out);
    if (!(eta > 0.0)) throw std::domain_error("lambda_of: requires eta > 0");
    if (theta < 0.0 || eta < theta)
        throw std::domain_error("lambda_of: requires an informative oracle (eta >= theta >= 0)");
    if (theta == 0.0) return std::numeric_limits<double>::infinity();
    if (theta == eta) return 0.0;
    return std::log(eta / theta) / denom;
}

ScoreVector ScoreVector::from_scores(std::vector<double> scores) {
    ScoreVector out;
    out.labels.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        out.labels[i] = scores[i] > 0.0 ? 1 : -1;
    out.x = std::move(scores);
    return out;
}

double relaxation_objective(const SparseGraph& g, const std::vector<double>& x,
                            const OracleLabels& s, double tau, double lambda, bool check_norm) {
    if (static_cast<std::int64_t>(x.size()) != g.n() || s.n() != g.n())
        throw std::invalid_argument("relaxation_objective: dimension mismatch");
    const double sqrt_n = std::sqrt(static_cast<double>(g.n()));
    double nx = 0.0;
    for (double v : x) nx += v * v;
    nx = std::sqrt(nx);
    if (check_norm && std::abs(nx - sqrt_n) > 1e-6 * sqrt_n)
        throw std::invalid_argument("relaxation_objective: ||x|| must equal sqrt(n)");

    std::vector<double> ax(x.size());
    g.apply(x, ax);
    double xax = 0.0, colsum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xax += x[i] * ax[i];
        colsum += x[i];
    }
    const double x_atau_x = xax - tau * colsum * colsum;

    double penalty = 0.0;
    for (std::int64_t i : s.labeled) {
        const double diff = static_cast<double>(s.s[static_cast<std::size_t>(i)]) -
                            x[static_cast<std::size_t>(i)];
        penalty += diff * diff;
    }
    return -x_atau_x + lambda * penalty;
}

SslResult solve_noisy(const SparseGraph& g, const OracleLabels& s, const SslParams& params,
                      const SolverOptions& opts) {
    if (s.n() != g.n()) throw std::invalid_argument("solve_noisy: oracle length mismatch");
    if (params.lambda == 0.0)
        throw std::invalid_argument(
            "solve_noisy: lambda = 0 is the unsupervised regime; run the spectral clustering "
            "baseline instead");
    if (!(params.lambda > 0.0) || std::isinf(params.lambda))
        throw std::invalid_argument(
            "solve_noisy: lambda must be finite and positive (lambda = infinity is solve_perfect)");

    const double alpha = resolve_alpha(g, params.tau, params.alpha, opts);
    RegularizedOperator op(g, params.tau, params.lambda, labeled_mask(s), alpha);

    std::vector<double> rhs(static_cast<std::size_t>(g.n()), 0.0);
    for (std::int64_t i : s.labeled)
        rhs[static_cast<std::size_t>(i)] =
            params.lambda * static_cast<double>(s.s[static_cast<std::size_t>(i)]);

    auto [x, report] = solve_spd(op.as_operator(), rhs, opts.cg_tol, opts.cg_max_iter);
    double nx = 0.0;
    for (double v : x) nx += v * v;
    nx = std::sqrt(nx);

    SslResult out;
    out.score = ScoreVector::from_scores(std::move(x));
    out.report = report;
    out.alpha_used = alpha;
    out.tau_used = params.tau;
    out.lambda_used = params.lambda;
    out.norm_scale = nx > 0.0 ? std::sqrt(static_cast<double>(g.n())) / nx
                              : std::numeric_limits<double>::infinity();
    return out;
}

SslResult solve_perfect(const SparseGraph& g, const OracleLabels& s, const SslParams& params,
                        const SolverOptions& opts) {
    if (s.n() != g.n()) throw std::invalid_argument("solve_perfect: oracle length mismatch");
    if (s.num_labeled() == 0)
        throw std::invalid_argument("solve_perfect: requires at least one labeled node");

    const auto mask = labeled_mask(s);
    std::vector<double> x(static_cast<std::size_t>(g.n()), 0.0);
    for (std::int64_t i : s.labeled)
        x[static_cast<std::size_t>(i)] = static_cast<double>(s.s[static_cast<std::size_t>(i)]);

    SslResult out;
    out.tau_used = params.tau;
    out.lambda_used = std::numeric_limits<double>::infinity();

    if (s.num_labeled() == g.n()) {
        // every coordinate clamped: nothing to solve
        out.alpha_used = 0.0;
        out.report = {0, 0.0, true};
    } else {
        const double alpha = resolve_alpha(g, params.tau, params.alpha, opts);
        // rhs = ((A - tau 1 1^T) S)_u with S supported on labeled nodes
        std::vector<double> as(x.size());
        g.apply(x, as);
        const double ssum = std::accumulate(x.begin(), x.end(), 0.0);
        std::vector<double> rhs;
        rhs.reserve(x.size() - static_cast<std::size_t>(s.num_labeled()));
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!mask[i]) rhs.push_back(as[i] - params.tau * ssum);

        auto op = unlabeled_block_operator(g, params.tau, alpha, mask);
        auto [xu, report] = solve_spd(op, rhs, opts.cg_tol, opts.cg_max_iter);
        std::size_t k = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!mask[i]) x[i] = xu[k++];
        out.alpha_used = alpha;
        out.report = report;
    }

    double nx = 0.0;
    for (double v : x) nx += v * v;
    out.norm_scale = std::sqrt(static_cast<double>(g.n())) / std::sqrt(nx);
    out.score = ScoreVector::from_scores(std::move(x));
    return out;
}

SslResult run_algorithm1(const SparseGraph& g, const OracleLabels& s, const ModelParams& model,
                         const AlgorithmOverrides& overrides, const SolverOptions& opts) {
    SslParams params;
    params.tau = overrides.tau ? *overrides.tau : tau_of(model.p_in, model.p_out);
    params.lambda = overrides.lambda
                        ? *overrides.lambda
                        : lambda_of(model.eta, model.theta, model.p_in, model.p_out);
    params.alpha = overrides.alpha ? *overrides.alpha : AlphaPolicy::spectral_norm();
    if (params.alpha.kind == AlphaPolicy::Kind::MeanField && params.alpha.value == 0.0)
        params.alpha.value = model.alpha_mf();

    if (params.lambda == 0.0)
        throw std::invalid_argument(
            "run_algorithm1: the oracle is uninformative (lambda = 0); run the spectral "
            "clustering baseline instead");
    if (std::isinf(params.lambda)) return solve_perfect(g, s, params, opts);
    return solve_noisy(g, s, params, opts);
}

}  // namespace sbmssl
