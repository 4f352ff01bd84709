#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sbmssl/graph.hpp"
#include "sbmssl/linalg.hpp"
#include "sbmssl/oracle.hpp"

namespace sbmssl {

/// tau = log((1-p_out)/(1-p_in)) / log(p_in(1-p_out)/(p_out(1-p_in))).
/// Requires 0 < p_out < p_in < 1; the value always lies in (p_out, p_in).
double tau_of(double p_in, double p_out);

/// lambda = log(eta/theta) / log(p_in(1-p_out)/(p_out(1-p_in))).
/// theta = 0 yields +infinity (perfect oracle, hard-constraint path);
/// eta = theta yields 0. Requires eta >= theta and eta > 0.
double lambda_of(double eta, double theta, double p_in, double p_out);

struct AlphaPolicy {
    enum class Kind { SpectralNorm, MeanField, Explicit };
    Kind kind = Kind::SpectralNorm;
    double value = 0.0;  // used by MeanField / Explicit

    static AlphaPolicy spectral_norm() { return {Kind::SpectralNorm, 0.0}; }
    static AlphaPolicy mean_field(double alpha_mf) { return {Kind::MeanField, alpha_mf}; }
    static AlphaPolicy explicit_value(double v) { return {Kind::Explicit, v}; }
};

struct SslParams {
    double tau = 0.0;
    double lambda = 0.0;  // +infinity selects the clamped (perfect oracle) solve
    AlphaPolicy alpha;
};

struct SolverOptions {
    double cg_tol = 1e-8;
    std::int64_t cg_max_iter = 0;  // 0 -> 10 n
    double sn_tol = 1e-6;
    std::int64_t sn_max_iter = 5000;
    std::uint64_t seed = 1;
};

/// Real-valued solution with its sign labeling. A zero score maps to -1
/// (deterministic tie rule).
struct ScoreVector {
    std::vector<double> x;
    std::vector<std::int8_t> labels;

    static ScoreVector from_scores(std::vector<double> scores);
};

struct SslResult {
    ScoreVector score;
    SolveReport report;
    double alpha_used = 0.0;
    double tau_used = 0.0;
    double lambda_used = 0.0;
    /// sqrt(n)/||x||: the positive factor that would restore the norm
    /// constraint. It never changes a sign, so the raw solve is returned.
    double norm_scale = 0.0;
};

/// Value of the relaxed objective -x^T A_tau x + lambda ||S - P_L x||^2,
/// computed matrix-free. Enforces ||x|| = sqrt(n) within 1e-6 relative
/// unless check_norm is false.
double relaxation_objective(const SparseGraph& g, const std::vector<double>& x,
                            const OracleLabels& s, double tau, double lambda,
                            bool check_norm = true);

/// Solve (alpha I - A_tau + lambda P_L) x = lambda S by conjugate gradient.
/// Requires 0 < lambda < infinity; lambda = 0 is rejected (that regime is
/// spectral clustering) and lambda = infinity belongs to solve_perfect.
SslResult solve_noisy(const SparseGraph& g, const OracleLabels& s, const SslParams& params,
                      const SolverOptions& opts = {});

/// Perfect-oracle path: clamp x_l = S_l and solve the unlabeled block
/// (alpha I - A_tau)_{uu} x_u = (A_tau)_{ul} S_l matrix-free.
SslResult solve_perfect(const SparseGraph& g, const OracleLabels& s, const SslParams& params,
                        const SolverOptions& opts = {});

struct AlgorithmOverrides {
    std::optional<double> tau;
    std::optional<double> lambda;
    std::optional<AlphaPolicy> alpha;
};

/// The full pipeline: parameter formulas (or overrides), alpha from the
/// policy (default: spectral norm of A_tau), then the noisy or clamped
/// solve and sign labeling.
SslResult run_algorithm1(const SparseGraph& g, const OracleLabels& s, const ModelParams& model,
                         const AlgorithmOverrides& overrides = {},
                         const SolverOptions& opts = {});

}  // namespace sbmssl
