#pragma once

#include <cstdint>
#include <vector>

#include "sbmssl/graph.hpp"
#include "sbmssl/oracle.hpp"
#include "sbmssl/ssl.hpp"

namespace sbmssl {

struct BaselineConfig {
    double beta = 0.9;        // label spreading damping, in (0,1)
    double eig_tol = 1e-8;    // eigenvector direction tolerance
    std::int64_t max_iter = 50000;
    std::uint64_t seed = 1;
};

struct BaselineResult {
    ScoreVector score;
    std::int64_t iterations = 0;
    bool converged = false;
    bool degenerate = false;  // spectral clustering: no informative gap
    std::vector<double> residuals;  // label spreading: per-iteration update norms
};

/// Sign split of the second-smallest eigenvector of the normalized
/// Laplacian I - D^{-1/2} A D^{-1/2}, computed by power iteration on the
/// complementary operator with the known top vector D^{1/2} 1 deflated.
/// Zero-degree nodes decouple (score 0, hence label -1).
BaselineResult spectral_clustering(const SparseGraph& g, const BaselineConfig& cfg = {});

/// Damped diffusion X <- beta D^{-1/2} A D^{-1/2} X + (1-beta) S iterated
/// to its fixed point; a contraction for beta < 1.
BaselineResult label_spreading(const SparseGraph& g, const OracleLabels& s,
                               const BaselineConfig& cfg = {});

}  // namespace sbmssl
