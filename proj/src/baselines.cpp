#include "sbmssl/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "sbmssl/rng.hpp"

namespace sbmssl {

namespace {

std::vector<double> inv_sqrt_degrees(const SparseGraph& g) {
    std::vector<double> dm(static_cast<std::size_t>(g.n()));
    for (std::int64_t i = 0; i < g.n(); ++i) {
        const double d = g.degree(i);
        dm[static_cast<std::size_t>(i)] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    return dm;
}

// y = D^{-1/2} A D^{-1/2} x
void normalized_apply(const SparseGraph& g, const std::vector<double>& dm,
                      const std::vector<double>& x, std::vector<double>& scratch,
                      std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = dm[i] * x[i];
    g.apply(scratch, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= dm[i];
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void project_out(const std::vector<double>& dir, std::vector<double>& x) {
    double p = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) p += dir[i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= p * dir[i];
}

struct PowerRun {
    std::vector<double> vec;
    double rayleigh = 0.0;
    std::int64_t iterations = 0;
    bool converged = false;
};

// Power iteration on M = I + D^{-1/2} A D^{-1/2} (spectrum in [0,2]) with
// the given directions deflated each step.
PowerRun deflated_power(const SparseGraph& g, const std::vector<double>& dm,
                        const std::vector<std::vector<double>>& deflate, double tol,
                        std::int64_t max_iter, std::mt19937_64& gen) {
    const std::size_t n = static_cast<std::size_t>(g.n());
    PowerRun run;
    run.vec.resize(n);
    for (double& v : run.vec) v = 2.0 * uniform01(gen) - 1.0;
    for (const auto& d : deflate) project_out(d, run.vec);
    double nx = norm2(run.vec);
    if (nx == 0.0) return run;
    for (double& v : run.vec) v /= nx;

    std::vector<double> scratch(n), y(n), prev(n);
    for (std::int64_t k = 1; k <= max_iter; ++k) {
        prev = run.vec;
        normalized_apply(g, dm, run.vec, scratch, y);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += run.vec[i];  // shift: M = I + normalized adjacency
            r += run.vec[i] * y[i];
        }
        run.rayleigh = r;
        for (const auto& d : deflate) project_out(d, y);
        const double ny = norm2(y);
        if (ny == 0.0) {
            run.iterations = k;
            run.converged = true;
            return run;
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            run.vec[i] = y[i] / ny;
            const double d = run.vec[i] - prev[i];
            diff += d * d;
        }
        if (std::sqrt(diff) <= tol) {
            run.iterations = k;
            run.converged = true;
            return run;
        }
        run.iterations = k;
    }
    return run;
}

}  // namespace

BaselineResult spectral_clustering(const SparseGraph& g, const BaselineConfig& cfg) {
    if (cfg.eig_tol <= 0.0) throw std::invalid_argument("spectral_clustering: tol must be positive");
    const std::size_t n = static_cast<std::size_t>(g.n());
    const std::vector<double> dm = inv_sqrt_degrees(g);

    // known top eigenvector of M: D^{1/2} 1 (restricted to positive degrees)
    std::vector<double> v1(n);
    for (std::int64_t i = 0; i < g.n(); ++i)
        v1[static_cast<std::size_t>(i)] = std::sqrt(std::max(g.degree(i), 0.0));
    const double nv1 = norm2(v1);
    if (nv1 > 0.0)
        for (double& v : v1) v /= nv1;

    std::mt19937_64 gen(cfg.seed);
    PowerRun run = deflated_power(g, dm, {v1}, cfg.eig_tol, cfg.max_iter, gen);

    BaselineResult out;
    out.iterations = run.iterations;
    out.converged = run.converged;

    // Fast convergence means the deflated operator acted like a multiple of
    // the identity on the start vector; verify against a second start and
    // flag a degenerate top eigenspace if the directions disagree.
    if (run.converged && run.iterations < 50) {
        PowerRun check = deflated_power(g, dm, {v1}, cfg.eig_tol, cfg.max_iter, gen);
        double overlap = 0.0;
        for (std::size_t i = 0; i < n; ++i) overlap += run.vec[i] * check.vec[i];
        if (std::abs(overlap) < 1.0 - 1e-6) out.degenerate = true;
    }
    if (!run.converged) out.degenerate = true;

    out.score = ScoreVector::from_scores(std::move(run.vec));
    return out;
}

BaselineResult label_spreading(const SparseGraph& g, const OracleLabels& s,
                               const BaselineConfig& cfg) {
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
        throw std::invalid_argument("label_spreading: beta must lie in (0,1)");
    if (s.n() != g.n()) throw std::invalid_argument("label_spreading: oracle length mismatch");

    const std::size_t n = static_cast<std::size_t>(g.n());
    const std::vector<double> dm = inv_sqrt_degrees(g);
    std::vector<double> anchor(n, 0.0);
    for (std::int64_t i : s.labeled)
        anchor[static_cast<std::size_t>(i)] =
            (1.0 - cfg.beta) * static_cast<double>(s.s[static_cast<std::size_t>(i)]);

    BaselineResult out;
    std::vector<double> x(n, 0.0), scratch(n), y(n);
    for (std::int64_t k = 1; k <= cfg.max_iter; ++k) {
        normalized_apply(g, dm, x, scratch, y);
        double diff = 0.0, nx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = cfg.beta * y[i] + anchor[i];
            const double d = next - x[i];
            diff += d * d;
            x[i] = next;
            nx += next * next;
        }
        out.iterations = k;
        out.residuals.push_back(std::sqrt(diff));
        if (std::sqrt(diff) <= 1e-8 * std::max(std::sqrt(nx), 1e-300)) {
            out.converged = true;
            break;
        }
    }
    out.score = ScoreVector::from_scores(std::move(x));
    return out;
}

}  // namespace sbmssl
