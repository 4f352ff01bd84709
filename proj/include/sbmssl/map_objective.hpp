#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sbmssl/graph.hpp"
#include "sbmssl/oracle.hpp"

namespace sbmssl {

/// Cluster assignment, entries in {-1, +1}.
using Assignment = std::vector<std::int8_t>;

struct MapObjectiveParams {
    double tau = 0.0;
    double lambda = 0.0;  // +infinity marks the perfect-oracle (hard constraint) form
};

/// Total weight of edges crossing the partition induced by sigma.
double cut(const SparseGraph& g, const Assignment& sigma);

/// The penalized-cut objective whose minimizer is the MAP assignment:
///   cut(C1, G) - tau |C1| (n - |C1|) + lambda |{i : S_i != 0, sigma_i != S_i}|.
/// Requires finite lambda; use map_objective_constrained for the hard
/// constraint form.
double map_objective(const SparseGraph& g, const Assignment& sigma, const OracleLabels& s,
                     const MapObjectiveParams& p);

/// Hard-constraint variant: value of cut - tau |C1| (n - |C1|) when sigma
/// agrees with every revealed label, std::nullopt otherwise.
std::optional<double> map_objective_constrained(const SparseGraph& g, const Assignment& sigma,
                                                const OracleLabels& s, double tau);

/// log Pr(G | sigma) + log Pr(sigma | S) up to an additive constant
/// independent of sigma. Intended for small unweighted graphs; requires
/// 0 < p_out < p_in < 1. With theta = 0 an assignment disagreeing with a
/// revealed label gets -infinity.
double log_posterior(const SparseGraph& g, const Assignment& sigma, const OracleLabels& s,
                     const ModelParams& params);

/// Exhaustive MAP search at the given tau/lambda. Ties are broken by
/// lexicographic order of sigma (with -1 < +1). With an empty oracle the
/// global sign symmetry is exploited by fixing sigma_0 = +1.
Assignment brute_force_map(const SparseGraph& g, const OracleLabels& s,
                           const MapObjectiveParams& p, std::int64_t max_n = 20);

/// Convenience overload deriving tau and lambda from the model parameters.
Assignment brute_force_map(const SparseGraph& g, const OracleLabels& s, const ModelParams& params,
                           std::int64_t max_n = 20);

/// Generalized modularity sum_{i,j} (A_ij - tau) [sigma_i = sigma_j] over
/// all ordered pairs including i = j.
double generalized_modularity(const SparseGraph& g, const Assignment& sigma, double tau);

}  // namespace sbmssl
