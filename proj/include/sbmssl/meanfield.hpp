#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sbmssl/graph.hpp"
#include "sbmssl/oracle.hpp"
#include "sbmssl/ssl.hpp"

namespace sbmssl {

/// Closed-form solution of the regularized system on the expected graph:
/// wrongly labeled nodes land on gamma1 * sigma0, correctly labeled on
/// gamma2 * sigma0, unlabeled on delta * sigma0.
struct MeanFieldSolution {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double delta = 0.0;
    double alpha_mf = 0.0;
    double s = 0.0;
};

struct ClassificationReport {
    bool unlabeled_ok = false;
    bool correct_labeled_ok = false;
    bool wrong_labeled_ok = false;
};

/// Closed-form spectrum of the expected system matrix
/// E Ltilde = alpha_mf I - E A_tau + lambda P_L. The quartet t1/t2 comes
/// from the rank-2 factorization; `eigenvalues` holds the full multiset
/// {alpha - t1+-, alpha - t2+-, alpha x(n-m-2), alpha+lambda x(m-2)} when
/// the labeled count m is an integer with 2 <= m <= n-2 (empty otherwise).
struct Spectrum {
    double t1_plus = 0.0;
    double t1_minus = 0.0;
    double t2_plus = 0.0;
    double t2_minus = 0.0;
    double alpha_mf = 0.0;
    double lambda = 0.0;
    double m = 0.0;
    std::vector<double> eigenvalues;  // ascending
};

/// Closed-form gammas and delta; requires even n, eta + theta > 0
/// and lambda > 0. lambda = +infinity takes the clamped limit
/// (gamma1 = -1, gamma2 = 1).
MeanFieldSolution meanfield_solution(const ModelParams& model, double lambda);

/// Sign conditions on delta, gamma2, gamma1. wrong_labeled_ok holds
/// exactly when lambda < (1-2s) alpha_mf (strict).
ClassificationReport classification_conditions(const ModelParams& model, double lambda);

Spectrum mf_spectrum(const ModelParams& model, double lambda, double tau);

/// Smallest eigenvalue of E Ltilde:
/// (alpha_mf+lambda)/2 * (1 - sqrt(1 - 4 lambda alpha_mf (theta+eta)/(lambda+alpha_mf)^2)).
double spectral_gap(const ModelParams& model, double lambda);

/// High-probability relative-distance bound ||X - X_mf|| / ||X_mf||
///   <= C / (1 - sqrt(1 - 4(theta+eta) lambda alpha_mf/(lambda+alpha_mf)^2)) * sqrt(d)/(alpha_mf+lambda).
/// The absolute constant C is a caller input. Degenerate inputs
/// (lambda = 0 or theta + eta = 0) give +infinity.
double concentration_bound(const ModelParams& model, double lambda, double C);

/// Misclassified-fraction bound: C times the square of the bracketed
/// concentration quantity. Returned unclipped; clip to [0,1] at reporting.
double misclassification_bound(const ModelParams& model, double lambda, double C);

/// Exact lambda >> alpha_mf limit of the misclassified-fraction bound:
/// C ((p_in+p_out)/(p_in-p_out))^2 / (4 (theta+eta)^2 d).
double misclassification_bound_asymptotic(const ModelParams& model, double C);

/// (c_in - c_out)^2 / (c_in + c_out) for p = c/n scaling; requires
/// c_in > c_out > 0.
double snr(double c_in, double c_out);

/// Relative distance between the solve on a sampled graph (alpha from the
/// spectral norm of A_tau) and the mean-field vector placed per node by
/// realized oracle outcome, after matching norms.
double empirical_concentration(const SparseGraph& g, const std::vector<std::int8_t>& sigma0,
                               const OracleLabels& s, const ModelParams& model, double lambda,
                               const SolverOptions& opts = {});

// --- explicit mean-field constructions (tests, acceptance, diagnostics) ---

/// E A for the balanced split (first half +1), diagonal p_in (self-loops).
Eigen::MatrixXd expected_adjacency(const ModelParams& model);

/// E A as a dense weighted graph.
SparseGraph mean_field_graph(const ModelParams& model);

/// Labeled-projection placement of the rank-2 analysis: first m/2 and
/// last m/2 diagonal entries set.
std::vector<std::uint8_t> prop3_labeled_mask(std::int64_t n, std::int64_t m);

/// alpha_mf I - (E A - tau J) + lambda diag(mask).
Eigen::MatrixXd expected_system_matrix(const ModelParams& model, double lambda, double tau,
                                       const std::vector<std::uint8_t>& labeled_mask);

/// Per-node mean-field vector: gamma1/gamma2/delta times sigma0 according
/// to the realized oracle outcome.
std::vector<double> mean_field_vector(const std::vector<std::int8_t>& sigma0,
                                      const OracleLabels& s, const MeanFieldSolution& mf);

}  // namespace sbmssl
