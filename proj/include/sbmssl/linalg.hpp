#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sbmssl/graph.hpp"

namespace sbmssl {

/// Thrown when conjugate gradient meets a direction of non-positive
/// curvature, i.e. the shift alpha sits below ||A_tau||.
class IndefiniteOperatorError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Matrix-free symmetric operator: y = op(x).
struct LinearOperator {
    std::int64_t n = 0;
    std::function<void(std::span<const double>, std::span<double>)> apply;
};

struct SolveReport {
    std::int64_t iterations = 0;
    double residual = 0.0;  // final ||op(x) - b||
    bool converged = false;
};

struct SpectralNormEstimate {
    double value = 0.0;
    std::int64_t iterations = 0;
    bool converged = false;
};

/// The regularized system of the semi-supervised solve:
///   apply(x) = (alpha I - A + tau 1 (1^T x) + lambda P_L) x,
/// i.e. alpha I - A_tau + lambda P_L without materializing the rank-1
/// term. Cost O(|E| + n) per apply; symmetric by construction.
class RegularizedOperator {
  public:
    RegularizedOperator(const SparseGraph& g, double tau, double lambda,
                        std::vector<std::uint8_t> labeled_mask, double alpha)
        : g_(&g), tau_(tau), lambda_(lambda), labeled_(std::move(labeled_mask)), alpha_(alpha) {
        if (static_cast<std::int64_t>(labeled_.size()) != g.n())
            throw std::invalid_argument("RegularizedOperator: mask length mismatch");
    }

    void apply(std::span<const double> x, std::span<double> y) const;
    LinearOperator as_operator() const;

    double tau() const { return tau_; }
    double lambda() const { return lambda_; }
    double alpha() const { return alpha_; }

  private:
    const SparseGraph* g_;
    double tau_;
    double lambda_;
    std::vector<std::uint8_t> labeled_;
    double alpha_;
};

/// y = A x.
LinearOperator adjacency_operator(const SparseGraph& g);

/// y = (A - tau 1 1^T) x, matrix-free.
LinearOperator shifted_adjacency_operator(const SparseGraph& g, double tau);

/// Principal submatrix (alpha I - A_tau)_{uu} acting on vectors indexed by
/// `unlabeled` (mask semantics: labeled entries are excluded).
LinearOperator unlabeled_block_operator(const SparseGraph& g, double tau, double alpha,
                                        const std::vector<std::uint8_t>& labeled_mask);

/// Dense operator wrapper, used by tests and small mean-field systems.
LinearOperator dense_operator(const Eigen::MatrixXd& m);

/// Largest |eigenvalue| of a symmetric operator by power iteration on the
/// squared operator (robust to +-lambda ties). Deterministic under seed.
/// Non-convergence is flagged, not thrown; value holds the best estimate.
SpectralNormEstimate spectral_norm(const LinearOperator& op, double tol = 1e-6,
                                   std::int64_t max_iter = 5000, std::uint64_t seed = 1);

/// Conjugate gradient for a symmetric positive (semi-)definite operator
/// with b in its range. Stops at ||op(x) - b|| <= tol * ||b||.
/// max_iter = 0 means 10 * n.
std::pair<std::vector<double>, SolveReport> solve_spd(const LinearOperator& op,
                                                      const std::vector<double>& b,
                                                      double tol = 1e-8,
                                                      std::int64_t max_iter = 0);

/// Full symmetric eigendecomposition, eigenvalues ascending. Validation
/// oracle for the closed-form spectra and small baselines; n <= 2000.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_sym_eigen(const Eigen::MatrixXd& m);

}  // namespace sbmssl
