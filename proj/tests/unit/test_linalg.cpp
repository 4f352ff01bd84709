#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sbmssl/linalg.hpp"
#include "sbmssl/meanfield.hpp"
#include "sbmssl/rng.hpp"
#include "sbmssl/ssl.hpp"

using namespace sbmssl;

namespace {

Eigen::MatrixXd dense_adjacency(const SparseGraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
    g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
        a(u, v) = w;
        if (u != v) a(v, u) = w;
    });
    return a;
}

}  // namespace

TEST_CASE("spectral norm of a diagonal operator") {
    Eigen::MatrixXd d = Eigen::Vector3d(3.0, -5.0, 1.0).asDiagonal();
    auto est = spectral_norm(dense_operator(d), 1e-10, 2000, 7);
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("spectral norm of the zero operator is zero") {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(5, 5);
    auto est = spectral_norm(dense_operator(z), 1e-8, 100, 3);
    CHECK(est.converged);
    CHECK(est.value == 0.0);
}

TEST_CASE("spectral norm of the mean-field shifted adjacency") {
    // the two nonzero block eigenvalues are d - n tau and alpha_mf
    ModelParams model{100, 0.2, 0.1, 0.0, 0.0};
    const double tau = tau_of(0.2, 0.1);
    Eigen::MatrixXd ea = expected_adjacency(model);
    ea.array() -= tau;
    const double expected =
        std::max(std::abs(model.d() - static_cast<double>(model.n) * tau), model.alpha_mf());
    auto est = spectral_norm(dense_operator(ea), 1e-9, 5000, 11);
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(expected).epsilon(1e-7));
    // cross-check against the dense eigensolver oracle
    auto [vals, vecs] = dense_sym_eigen(ea);
    const double by_eigen = std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
    CHECK(est.value == doctest::Approx(by_eigen).epsilon(1e-7));
}

TEST_CASE("spectral norm dominates random Rayleigh quotients") {
    ModelParams p{150, 0.3, 0.1, 0.0, 0.0};
    auto [g, sigma] = sample_ssbm(p, 21);
    const double tau = tau_of(0.3, 0.1);
    auto op = shifted_adjacency_operator(g, tau);
    auto est = spectral_norm(op, 1e-8, 5000, 5);
    REQUIRE(est.converged);
    std::mt19937_64 gen(17);
    std::vector<double> x(150), y(150);
    for (int trial = 0; trial < 100; ++trial) {
        double nx = 0;
        for (auto& v : x) {
            v = uniform01(gen) - 0.5;
        }
        for (auto v : x) nx += v * v;
        op.apply(x, y);
        double q = 0;
        for (int i = 0; i < 150; ++i) q += x[i] * y[i];
        CHECK(std::abs(q) / nx <= est.value * (1.0 + 1e-6));
    }
}

TEST_CASE("conjugate gradient solves the identity in one iteration") {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
    std::vector<double> b{1.0, -2.0, 3.0, 0.5};
    auto [x, rep] = solve_spd(dense_operator(id), b);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    for (int i = 0; i < 4; ++i) CHECK(x[static_cast<std::size_t>(i)] == doctest::Approx(b[static_cast<std::size_t>(i)]));
}

TEST_CASE("conjugate gradient on a 2x2 system") {
    Eigen::MatrixXd m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;
    auto [x, rep] = solve_spd(dense_operator(m), {1.0, 1.0}, 1e-12);
    CHECK(rep.converged);
    CHECK(x[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("an indefinite operator is detected") {
    SUBCASE("explicit sign-indefinite diagonal") {
        Eigen::MatrixXd d = Eigen::Vector2d(1.0, -1.0).asDiagonal();
        CHECK_THROWS_AS(solve_spd(dense_operator(d), {1.0, 1.0}), IndefiniteOperatorError);
    }
    SUBCASE("alpha below the norm of A_tau") {
        ModelParams p{30, 0.6, 0.2, 0.0, 0.0};
        auto [g, sigma] = sample_ssbm(p, 4);
        const double tau = 0.3;
        const double norm = spectral_norm(shifted_adjacency_operator(g, tau), 1e-8, 5000, 2).value;
        RegularizedOperator op(g, tau, 0.0, std::vector<std::uint8_t>(30, 0), 0.5 * norm);
        std::mt19937_64 gen(9);
        std::vector<double> b(30);
        for (auto& v : b) v = uniform01(gen) - 0.5;
        CHECK_THROWS_AS(solve_spd(op.as_operator(), b), IndefiniteOperatorError);
    }
}

TEST_CASE("final CG residual never exceeds the initial one") {
    ModelParams p{80, 0.4, 0.1, 0.0, 0.0};
    auto [g, sigma] = sample_ssbm(p, 31);
    const double tau = tau_of(0.4, 0.1);
    std::vector<std::uint8_t> mask(80, 0);
    for (int i = 0; i < 20; ++i) mask[static_cast<std::size_t>(i * 4)] = 1;
    const double alpha = spectral_norm(shifted_adjacency_operator(g, tau), 1e-8, 5000, 2).value;
    RegularizedOperator op(g, tau, 2.0, mask, alpha);
    std::mt19937_64 gen(3);
    std::vector<double> b(80);
    for (auto& v : b) v = uniform01(gen) - 0.5;
    double nb = 0;
    for (auto v : b) nb += v * v;
    auto [x, rep] = solve_spd(op.as_operator(), b, 1e-10);
    CHECK(rep.converged);
    CHECK(rep.residual <= std::sqrt(nb));
    CHECK(rep.residual <= 1e-10 * std::sqrt(nb));
}

TEST_CASE("dense symmetric eigensolver basics") {
    Eigen::MatrixXd d = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    auto [vals, vecs] = dense_sym_eigen(d);
    CHECK(vals(0) == doctest::Approx(1.0));
    CHECK(vals(1) == doctest::Approx(2.0));
    CHECK(vals(2) == doctest::Approx(3.0));

    Eigen::MatrixXd swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    auto [sv, svec] = dense_sym_eigen(swap);
    CHECK(sv(0) == doctest::Approx(-1.0));
    CHECK(sv(1) == doctest::Approx(1.0));

    Eigen::MatrixXd bad(2, 2);
    bad << 0.0, 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(dense_sym_eigen(bad), std::invalid_argument);
}

TEST_CASE("eigenpairs satisfy the residual contract") {
    std::mt19937_64 gen(8);
    Eigen::MatrixXd m(40, 40);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = uniform01(gen) - 0.5;
    auto [vals, vecs] = dense_sym_eigen(m);
    const double scale = m.norm();
    for (int k = 0; k < 40; ++k) {
        const double resid = (m * vecs.col(k) - vals(k) * vecs.col(k)).norm();
        CHECK(resid <= 1e-8 * scale);
        if (k > 0) CHECK(vals(k) >= vals(k - 1));
    }
}

TEST_CASE("matrix-free operators match their dense counterparts") {
    ModelParams p{120, 0.3, 0.1, 0.0, 0.0};
    auto [g, sigma] = sample_ssbm(p, 55);
    const double tau = 0.17, lambda = 1.3, alpha = 25.0;
    std::vector<std::uint8_t> mask(120, 0);
    for (int i = 0; i < 120; i += 3) mask[static_cast<std::size_t>(i)] = 1;

    Eigen::MatrixXd a = dense_adjacency(g);
    Eigen::MatrixXd dense = -a;
    dense.array() += tau;
    dense.diagonal().array() += alpha;
    for (int i = 0; i < 120; ++i)
        if (mask[static_cast<std::size_t>(i)]) dense(i, i) += lambda;

    RegularizedOperator op(g, tau, lambda, mask, alpha);
    std::mt19937_64 gen(6);
    std::vector<double> x(120), y(120);
    for (auto& v : x) v = uniform01(gen) - 0.5;
    op.apply(x, y);
    Eigen::Map<Eigen::VectorXd> xv(x.data(), 120);
    Eigen::VectorXd want = dense * xv;
    for (int i = 0; i < 120; ++i)
        CHECK(y[static_cast<std::size_t>(i)] ==
              doctest::Approx(want(i)).epsilon(1e-12).scale(want.norm()));

    // unlabeled principal block
    std::vector<std::int64_t> uids;
    for (int i = 0; i < 120; ++i)
        if (!mask[static_cast<std::size_t>(i)]) uids.push_back(i);
    Eigen::MatrixXd atau = a;
    atau.array() -= tau;
    Eigen::MatrixXd block(uids.size(), uids.size());
    for (std::size_t r = 0; r < uids.size(); ++r)
        for (std::size_t c = 0; c < uids.size(); ++c)
            block(r, c) = (r == c ? alpha : 0.0) - atau(uids[r], uids[c]);
    auto bop = unlabeled_block_operator(g, tau, alpha, mask);
    std::vector<double> xu(uids.size()), yu(uids.size());
    for (auto& v : xu) v = uniform01(gen) - 0.5;
    bop.apply(xu, yu);
    Eigen::Map<Eigen::VectorXd> xuv(xu.data(), static_cast<std::int64_t>(uids.size()));
    Eigen::VectorXd wantu = block * xuv;
    for (std::size_t i = 0; i < uids.size(); ++i)
        CHECK(yu[i] == doctest::Approx(wantu(static_cast<std::int64_t>(i)))
                           .epsilon(1e-12)
                           .scale(wantu.norm()));
}
