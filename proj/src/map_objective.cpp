#include "sbmssl/map_objective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbmssl/ssl.hpp"

namespace sbmssl {

namespace {

void check_assignment(const SparseGraph& g, const Assignment& sigma) {
    if (static_cast<std::int64_t>(sigma.size()) != g.n())
        throw std::invalid_argument("assignment length does not match graph");
    for (std::int8_t v : sigma)
        if (v != 1 && v != -1) throw std::invalid_argument("assignment entries must be +-1");
}

std::int64_t count_plus(const Assignment& sigma) {
    std::int64_t c = 0;
    for (std::int8_t v : sigma) c += v > 0;
    return c;
}

std::int64_t count_disagreements(const Assignment& sigma, const OracleLabels& s) {
    std::int64_t c = 0;
    for (std::int64_t i : s.labeled)
        c += sigma[static_cast<std::size_t>(i)] != s.s[static_cast<std::size_t>(i)];
    return c;
}

}  // namespace

double cut(const SparseGraph& g, const Assignment& sigma) {
    check_assignment(g, sigma);
    double total = 0.0;
    g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
        if (sigma[static_cast<std::size_t>(u)] != sigma[static_cast<std::size_t>(v)]) total += w;
    });
    return total;
}

double map_objective(const SparseGraph& g, const Assignment& sigma, const OracleLabels& s,
                     const MapObjectiveParams& p) {
    if (std::isinf(p.lambda))
        throw std::invalid_argument(
            "map_objective: lambda is infinite; use map_objective_constrained");
    const double c1 = static_cast<double>(count_plus(sigma));
    return cut(g, sigma) - p.tau * c1 * (static_cast<double>(g.n()) - c1) +
           p.lambda * static_cast<double>(count_disagreements(sigma, s));
}

std::optional<double> map_objective_constrained(const SparseGraph& g, const Assignment& sigma,
                                                const OracleLabels& s, double tau) {
    check_assignment(g, sigma);
    if (count_disagreements(sigma, s) > 0) return std::nullopt;
    const double c1 = static_cast<double>(count_plus(sigma));
    return cut(g, sigma) - tau * c1 * (static_cast<double>(g.n()) - c1);
}

double log_posterior(const SparseGraph& g, const Assignment& sigma, const OracleLabels& s,
                     const ModelParams& params) {
    check_assignment(g, sigma);
    if (!(params.p_out > 0.0 && params.p_in > params.p_out && params.p_in < 1.0))
        throw std::domain_error("log_posterior: requires 0 < p_out < p_in < 1");
    const double n_out = cut(g, sigma);
    const double c1 = static_cast<double>(count_plus(sigma));
    const double c2 = static_cast<double>(g.n()) - c1;
    const double edge_term =
        n_out * std::log(params.p_out * (1.0 - params.p_in) / (params.p_in * (1.0 - params.p_out)));
    const double balance_term =
        c1 * c2 * std::log((1.0 - params.p_out) / (1.0 - params.p_in));

    const std::int64_t disagree = count_disagreements(sigma, s);
    double oracle_term = 0.0;
    if (s.num_labeled() > 0 && params.theta > 0.0) {
        if (params.eta <= 0.0)
            throw std::domain_error("log_posterior: eta must be positive with labeled nodes");
        oracle_term = static_cast<double>(disagree) * std::log(params.theta / params.eta);
    } else if (disagree > 0) {
        // theta = 0: the prior gives probability zero to any disagreement
        return -std::numeric_limits<double>::infinity();
    }
    return edge_term + balance_term + oracle_term;
}

namespace {

// mask bit (n-1-i) drives sigma_i, so increasing mask order is exactly
// lexicographic order on sigma with -1 < +1.
Assignment assignment_from_mask(std::uint64_t mask, std::int64_t n) {
    Assignment sigma(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        sigma[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1u ? 1 : -1;
    return sigma;
}

}  // namespace

Assignment brute_force_map(const SparseGraph& g, const OracleLabels& s,
                           const MapObjectiveParams& p, std::int64_t max_n) {
    const std::int64_t n = g.n();
    if (n > max_n)
        throw std::invalid_argument("brute_force_map: n exceeds the exhaustive-search limit");
    if (s.n() != n) throw std::invalid_argument("brute_force_map: oracle length mismatch");
    const bool unsupervised = s.num_labeled() == 0;
    const bool constrained = std::isinf(p.lambda);
    // global sign symmetry: with no oracle, fix sigma_0 = +1, i.e. the top
    // mask bit is always set
    const std::uint64_t first = unsupervised && n > 1 ? 1ULL << (n - 1) : 0;
    const std::uint64_t limit = 1ULL << n;

    double best = std::numeric_limits<double>::infinity();
    Assignment best_sigma;
    for (std::uint64_t mask = first; mask < limit; ++mask) {
        Assignment sigma = assignment_from_mask(mask, n);
        double value;
        if (constrained) {
            auto v = map_objective_constrained(g, sigma, s, p.tau);
            if (!v) continue;
            value = *v;
        } else {
            value = map_objective(g, sigma, s, p);
        }
        // strict improvement only: earlier (lexicographically smaller) wins ties
        if (best_sigma.empty() || value < best - 1e-12 * (1.0 + std::abs(best))) {
            best = value;
            best_sigma = std::move(sigma);
        }
    }
    if (best_sigma.empty())
        throw std::runtime_error("brute_force_map: no feasible assignment (contradictory oracle?)");
    return best_sigma;
}

Assignment brute_force_map(const SparseGraph& g, const OracleLabels& s, const ModelParams& params,
                           std::int64_t max_n) {
    MapObjectiveParams p;
    p.tau = tau_of(params.p_in, params.p_out);
    p.lambda = (params.eta + params.theta > 0.0)
                   ? lambda_of(params.eta, params.theta, params.p_in, params.p_out)
                   : 0.0;
    return brute_force_map(g, s, p, max_n);
}

double generalized_modularity(const SparseGraph& g, const Assignment& sigma, double tau) {
    check_assignment(g, sigma);
    double adj = 0.0;
    g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
        if (sigma[static_cast<std::size_t>(u)] == sigma[static_cast<std::size_t>(v)])
            adj += (u == v) ? w : 2.0 * w;
    });
    const double c1 = static_cast<double>(count_plus(sigma));
    const double c2 = static_cast<double>(g.n()) - c1;
    return adj - tau * (c1 * c1 + c2 * c2);
}

}  // namespace sbmssl
