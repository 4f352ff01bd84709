#include "sbmssl/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "sbmssl/rng.hpp"

namespace sbmssl {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

void RegularizedOperator::apply(std::span<const double> x, std::span<double> y) const {
    g_->apply(x, y);
    const double colsum = std::accumulate(x.begin(), x.end(), 0.0);
    const std::size_t n = static_cast<std::size_t>(g_->n());
    for (std::size_t i = 0; i < n; ++i) {
        double v = alpha_ * x[i] - y[i] + tau_ * colsum;
        if (labeled_[i]) v += lambda_ * x[i];
        y[i] = v;
    }
}

LinearOperator RegularizedOperator::as_operator() const {
    return {g_->n(), [self = *this](std::span<const double> x, std::span<double> y) {
                self.apply(x, y);
            }};
}

LinearOperator adjacency_operator(const SparseGraph& g) {
    return {g.n(),
            [&g](std::span<const double> x, std::span<double> y) { g.apply(x, y); }};
}

LinearOperator shifted_adjacency_operator(const SparseGraph& g, double tau) {
    return {g.n(), [&g, tau](std::span<const double> x, std::span<double> y) {
                g.apply(x, y);
                const double colsum = std::accumulate(x.begin(), x.end(), 0.0);
                for (std::size_t i = 0; i < x.size(); ++i) y[i] -= tau * colsum;
            }};
}

LinearOperator unlabeled_block_operator(const SparseGraph& g, double tau, double alpha,
                                        const std::vector<std::uint8_t>& labeled_mask) {
    if (static_cast<std::int64_t>(labeled_mask.size()) != g.n())
        throw std::invalid_argument("unlabeled_block_operator: mask length mismatch");
    std::vector<std::int64_t> ids;
    for (std::size_t i = 0; i < labeled_mask.size(); ++i)
        if (!labeled_mask[i]) ids.push_back(static_cast<std::int64_t>(i));
    const std::int64_t nu = static_cast<std::int64_t>(ids.size());
    return {nu, [&g, tau, alpha, ids = std::move(ids)](std::span<const double> x,
                                                       std::span<double> y) {
                std::vector<double> full(static_cast<std::size_t>(g.n()), 0.0);
                std::vector<double> out(static_cast<std::size_t>(g.n()), 0.0);
                for (std::size_t k = 0; k < ids.size(); ++k)
                    full[static_cast<std::size_t>(ids[k])] = x[k];
                g.apply(full, out);
                const double colsum = std::accumulate(x.begin(), x.end(), 0.0);
                for (std::size_t k = 0; k < ids.size(); ++k) {
                    const std::size_t i = static_cast<std::size_t>(ids[k]);
                    y[k] = alpha * x[k] - (out[i] - tau * colsum);
                }
            }};
}

LinearOperator dense_operator(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dense_operator: matrix not square");
    return {m.rows(), [m](std::span<const double> x, std::span<double> y) {
                Eigen::Map<const Eigen::VectorXd> xv(x.data(), m.cols());
                Eigen::Map<Eigen::VectorXd> yv(y.data(), m.rows());
                yv = m * xv;
            }};
}

SpectralNormEstimate spectral_norm(const LinearOperator& op, double tol, std::int64_t max_iter,
                                   std::uint64_t seed) {
    if (tol <= 0.0) throw std::invalid_argument("spectral_norm: tol must be positive");
    const std::size_t n = static_cast<std::size_t>(op.n);
    if (n == 0) return {0.0, 0, true};
    std::mt19937_64 gen(seed);
    std::vector<double> x(n), y(n), z(n);
    for (double& v : x) v = 2.0 * uniform01(gen) - 1.0;
    double nx = norm2(x);
    for (double& v : x) v /= nx;

    double est = 0.0;
    std::int64_t hits = 0;
    for (std::int64_t k = 1; k <= max_iter; ++k) {
        op.apply(x, y);
        const double ny = norm2(y);  // sqrt(x' op^2 x) with ||x|| = 1
        if (ny == 0.0) return {0.0, k, true};
        op.apply(y, z);
        const double nz = norm2(z);
        const double next = nz / ny;  // Rayleigh estimate one op^2 step ahead
        const bool close = std::abs(next - est) <= tol * std::max(next, 1e-300);
        est = next;
        if (close && ++hits >= 2) return {est, k, true};
        if (!close) hits = 0;
        if (nz == 0.0) return {est, k, true};
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
    }
    return {est, max_iter, false};
}

std::pair<std::vector<double>, SolveReport> solve_spd(const LinearOperator& op,
                                                      const std::vector<double>& b, double tol,
                                                      std::int64_t max_iter) {
    const std::size_t n = static_cast<std::size_t>(op.n);
    if (b.size() != n) throw std::invalid_argument("solve_spd: dimension mismatch");
    if (tol <= 0.0) throw std::invalid_argument("solve_spd: tol must be positive");
    if (max_iter <= 0) max_iter = 10 * op.n;

    std::vector<double> x(n, 0.0);
    const double nb = norm2(b);
    if (nb == 0.0) return {std::move(x), {0, 0.0, true}};

    std::vector<double> r = b, p = b, q(n);
    double rs = dot(r, r);
    for (std::int64_t k = 1; k <= max_iter; ++k) {
        op.apply(p, q);
        const double pq = dot(p, q);
        if (pq <= 0.0)
            throw IndefiniteOperatorError(
                "solve_spd: non-positive curvature encountered (alpha below ||A_tau||?)");
        const double step = rs / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += step * p[i];
            r[i] -= step * q[i];
        }
        const double rs_new = dot(r, r);
        const double nr = std::sqrt(rs_new);
        if (nr <= tol * nb) return {std::move(x), {k, nr, true}};
        const double beta = rs_new / rs;
        rs = rs_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    return {std::move(x), {max_iter, std::sqrt(rs), false}};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_sym_eigen(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("dense_sym_eigen: matrix not square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale)
        throw std::invalid_argument("dense_sym_eigen: input not symmetric within 1e-10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_sym_eigen: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace sbmssl
