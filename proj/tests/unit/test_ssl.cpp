#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sbmssl/map_objective.hpp"
#include "sbmssl/meanfield.hpp"
#include "sbmssl/rng.hpp"
#include "sbmssl/ssl.hpp"

using namespace sbmssl;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// frozen against a high-precision evaluation of the closed forms
constexpr double kTau0302 = 0.024671558954413786;
constexpr double kLambdaBench = 5.2853268475784551;

}  // namespace

TEST_CASE("tau formula") {
    CHECK(tau_of(0.03, 0.02) == doctest::Approx(kTau0302).epsilon(1e-13));
    CHECK_THROWS_AS(tau_of(0.1, 0.2), std::domain_error);
    CHECK_THROWS_AS(tau_of(0.2, 0.2), std::domain_error);
    // log-mean inequality places tau strictly between the probabilities
    const double t = tau_of(0.2, 0.1);
    CHECK(t > 0.1);
    CHECK(t < 0.2);
}

TEST_CASE("tau scaling heuristic in the sparse limit") {
    const double c_in = 4.0, c_out = 1.0;
    const double limit = (c_in - c_out) / std::log(c_in / c_out);
    double prev_err = kInf;
    for (double p : {1e-2, 1e-3, 1e-4}) {
        const double ratio = tau_of(c_in * p, c_out * p) / p;
        const double err = std::abs(ratio - limit);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3 * limit);
}

TEST_CASE("lambda formula") {
    CHECK(lambda_of(0.05, 0.05, 0.3, 0.1) == 0.0);
    CHECK(lambda_of(0.09, 0.01, 0.03, 0.02) == doctest::Approx(kLambdaBench).epsilon(1e-13));
    CHECK(lambda_of(0.1, 0.0, 0.3, 0.1) == kInf);
    CHECK_THROWS_AS(lambda_of(0.01, 0.09, 0.03, 0.02), std::domain_error);
    CHECK_THROWS_AS(lambda_of(0.0, 0.0, 0.03, 0.02), std::domain_error);
}

TEST_CASE("relaxed objective at a discrete assignment is an affine image") {
    ModelParams model{8, 0.7, 0.2, 0.3, 0.1};
    auto [g, sigma0] = sample_ssbm(model, 1, false);
    OracleLabels s = sample_oracle(sigma0, model.eta, model.theta, 2);
    const double tau = 0.3, lambda = 1.7;
    double offset = kInf;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        Assignment a(8);
        std::vector<double> x(8);
        for (int i = 0; i < 8; ++i) {
            a[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1 : -1;
            x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        }
        const double relaxed = relaxation_objective(g, x, s, tau, lambda);
        const double discrete = map_objective(g, a, s, {tau, lambda});
        const double diff = relaxed - 4.0 * discrete;
        if (std::isinf(offset))
            offset = diff;
        else
            CHECK(diff == doctest::Approx(offset).epsilon(1e-9));  // sigma-independent constant
    }
}

TEST_CASE("relaxed objective norm handling") {
    SparseGraph g(4, {{0, 1, 1}, {2, 3, 1}});
    OracleLabels s = OracleLabels::from_vector({1, 0, 0, 0});
    std::vector<double> ok{1, 1, -1, -1};
    CHECK_NOTHROW(relaxation_objective(g, ok, s, 0.1, 1.0));
    std::vector<double> bad{3, 0, 0, 0};
    CHECK_THROWS_AS(relaxation_objective(g, bad, s, 0.1, 1.0), std::invalid_argument);
    CHECK_NOTHROW(relaxation_objective(g, bad, s, 0.1, 1.0, /*check_norm=*/false));
    // lambda = 0 leaves only the quadratic part
    const double v = relaxation_objective(g, ok, s, 0.1, 0.0);
    std::vector<double> ax(4);
    g.apply(ok, ax);
    double quad = 0, sum = 0;
    for (int i = 0; i < 4; ++i) {
        quad += ok[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)];
        sum += ok[static_cast<std::size_t>(i)];
    }
    CHECK(v == doctest::Approx(-(quad - 0.1 * sum * sum)));
}

TEST_CASE("solve_noisy reproduces the mean-field pattern on the expected graph") {
    // 40 nodes, per cluster: 1 wrongly labeled, 2 correctly labeled
    ModelParams model{40, 0.3, 0.1, 0.1, 0.05};
    SparseGraph g = mean_field_graph(model);
    std::vector<std::int8_t> sigma0(40);
    std::vector<std::int8_t> sv(40, 0);
    for (int i = 0; i < 40; ++i) sigma0[static_cast<std::size_t>(i)] = i < 20 ? 1 : -1;
    for (int base : {0, 20}) {
        const std::int8_t truth = base == 0 ? 1 : -1;
        sv[static_cast<std::size_t>(base)] = static_cast<std::int8_t>(-truth);
        sv[static_cast<std::size_t>(base + 1)] = truth;
        sv[static_cast<std::size_t>(base + 2)] = truth;
    }
    OracleLabels s = OracleLabels::from_vector(sv);
    const double lambda = lambda_of(model.eta, model.theta, model.p_in, model.p_out);
    SslParams params{tau_of(model.p_in, model.p_out), lambda,
                     AlphaPolicy::explicit_value(model.alpha_mf())};
    SolverOptions opts;
    opts.cg_tol = 1e-12;
    SslResult res = solve_noisy(g, s, params, opts);
    REQUIRE(res.report.converged);

    MeanFieldSolution mf = meanfield_solution(model, lambda);
    std::vector<double> want = mean_field_vector(sigma0, s, mf);
    for (int i = 0; i < 40; ++i)
        CHECK(res.score.x[static_cast<std::size_t>(i)] ==
              doctest::Approx(want[static_cast<std::size_t>(i)]).epsilon(1e-8));
}

TEST_CASE("solve_noisy labels two disjoint triangles like the exact MAP") {
    SparseGraph g(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
    OracleLabels s = OracleLabels::from_vector({1, 0, 0, -1, 0, 0});
    SslParams params{0.2, 10.0, AlphaPolicy::spectral_norm()};
    SslResult res = solve_noisy(g, s, params);
    Assignment want = brute_force_map(g, s, MapObjectiveParams{0.2, 10.0});
    CHECK(res.score.labels == want);
    CHECK(res.score.labels == std::vector<std::int8_t>{1, 1, 1, -1, -1, -1});
}

TEST_CASE("solve_noisy is homogeneous in the oracle and vanishes without labels") {
    ModelParams model{60, 0.4, 0.1, 0.2, 0.05};
    auto [g, sigma0] = sample_ssbm(model, 5);
    OracleLabels s = sample_oracle(sigma0, model.eta, model.theta, 6);
    SslParams params{tau_of(0.4, 0.1), 2.0, AlphaPolicy::spectral_norm()};
    SolverOptions opts;
    opts.cg_tol = 1e-12;
    SslResult plus = solve_noisy(g, s, params, opts);

    std::vector<std::int8_t> flipped(s.s);
    for (auto& v : flipped) v = static_cast<std::int8_t>(-v);
    SslResult minus = solve_noisy(g, OracleLabels::from_vector(flipped), params, opts);
    for (int i = 0; i < 60; ++i)
        CHECK(minus.score.x[static_cast<std::size_t>(i)] ==
              doctest::Approx(-plus.score.x[static_cast<std::size_t>(i)]).epsilon(1e-8));

    OracleLabels none = OracleLabels::from_vector(std::vector<std::int8_t>(60, 0));
    SslResult zero = solve_noisy(g, none, params, opts);
    CHECK(zero.report.iterations == 0);
    for (double v : zero.score.x) CHECK(v == 0.0);
    CHECK(std::all_of(zero.score.labels.begin(), zero.score.labels.end(),
                      [](std::int8_t l) { return l == -1; }));
}

TEST_CASE("solve_noisy is equivariant under node relabeling") {
    ModelParams model{30, 0.5, 0.15, 0.2, 0.05};
    auto [g, sigma0] = sample_ssbm(model, 9);
    OracleLabels s = sample_oracle(sigma0, model.eta, model.theta, 10);

    std::vector<std::int64_t> perm(30);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 gen(4);
    for (int i = 29; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(gen() % static_cast<std::uint64_t>(i + 1))]);

    std::vector<Edge> edges;
    g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
        edges.push_back({perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)], w});
    });
    SparseGraph pg(30, edges);
    std::vector<std::int8_t> ps(30);
    for (int i = 0; i < 30; ++i)
        ps[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
            s.s[static_cast<std::size_t>(i)];

    SslParams params{0.2, 1.5, AlphaPolicy::explicit_value(12.0)};
    SolverOptions opts;
    opts.cg_tol = 1e-12;
    SslResult base = solve_noisy(g, s, params, opts);
    SslResult permuted = solve_noisy(pg, OracleLabels::from_vector(ps), params, opts);
    for (int i = 0; i < 30; ++i)
        CHECK(permuted.score.x[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] ==
              doctest::Approx(base.score.x[static_cast<std::size_t>(i)]).epsilon(1e-8));
}

TEST_CASE("solve_noisy parameter guards") {
    SparseGraph g(4, {{0, 1, 1}});
    OracleLabels s = OracleLabels::from_vector({1, 0, 0, 0});
    CHECK_THROWS_WITH_AS(solve_noisy(g, s, {0.1, 0.0, AlphaPolicy::spectral_norm()}),
                         doctest::Contains("spectral"), std::invalid_argument);
    CHECK_THROWS_AS(solve_noisy(g, s, {0.1, kInf, AlphaPolicy::spectral_norm()}),
                    std::invalid_argument);
}

TEST_CASE("solve_perfect clamps labels and solves the complement") {
    SUBCASE("all nodes labeled: nothing to solve") {
        SparseGraph g(4, {{0, 1, 1}, {2, 3, 1}});
        OracleLabels s = OracleLabels::from_vector({1, 1, -1, -1});
        SslResult res = solve_perfect(g, s, {0.1, kInf, AlphaPolicy::spectral_norm()});
        CHECK(res.report.iterations == 0);
        CHECK(res.score.x == std::vector<double>{1, 1, -1, -1});
        CHECK(res.score.labels == std::vector<std::int8_t>{1, 1, -1, -1});
    }
    SUBCASE("mean-field instance recovers sigma0 exactly on unlabeled nodes") {
        ModelParams model{40, 0.3, 0.1, 0.2, 0.0};
        SparseGraph g = mean_field_graph(model);
        std::vector<std::int8_t> sv(40, 0);
        for (int i = 0; i < 4; ++i) {
            sv[static_cast<std::size_t>(i)] = 1;          // cluster 1 labeled
            sv[static_cast<std::size_t>(20 + i)] = -1;    // cluster 2 labeled
        }
        OracleLabels s = OracleLabels::from_vector(sv);
        SslParams params{tau_of(model.p_in, model.p_out), kInf,
                         AlphaPolicy::explicit_value(model.alpha_mf())};
        SolverOptions opts;
        opts.cg_tol = 1e-12;
        SslResult res = solve_perfect(g, s, params, opts);
        for (int i = 0; i < 40; ++i) {
            const double want = i < 20 ? 1.0 : -1.0;
            CHECK(res.score.x[static_cast<std::size_t>(i)] ==
                  doctest::Approx(want).epsilon(1e-8));
        }
    }
    SUBCASE("single unlabeled node attached to a labeled clique scores positive") {
        SparseGraph g(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {0, 3, 1}});
        OracleLabels s = OracleLabels::from_vector({1, 1, 1, 0});
        SslResult res = solve_perfect(g, s, {0.1, kInf, AlphaPolicy::spectral_norm()});
        CHECK(res.score.x[3] > 0.0);
        CHECK(res.score.labels[3] == 1);
    }
    SUBCASE("no labeled nodes is an error") {
        SparseGraph g(3, {{0, 1, 1}});
        OracleLabels s = OracleLabels::from_vector({0, 0, 0});
        CHECK_THROWS_AS(solve_perfect(g, s, {0.1, kInf, AlphaPolicy::spectral_norm()}),
                        std::invalid_argument);
    }
}

TEST_CASE("run_algorithm1 dispatch, overrides and failure modes") {
    ModelParams model{50, 0.4, 0.1, 0.1, 0.1};
    auto [g, sigma0] = sample_ssbm(model, 3);
    OracleLabels s = sample_oracle(sigma0, model.eta, model.theta, 4);
    SUBCASE("uninformative oracle points at the spectral baseline") {
        CHECK_THROWS_WITH_AS(run_algorithm1(g, s, model), doctest::Contains("spectral"),
                             std::invalid_argument);
    }
    SUBCASE("overrides are honored verbatim") {
        AlgorithmOverrides ov;
        ov.tau = 0.025;
        ov.lambda = 5.0;
        SslResult res = run_algorithm1(g, s, model, ov);
        CHECK(res.tau_used == 0.025);
        CHECK(res.lambda_used == 5.0);
    }
    SUBCASE("perfect oracle dispatches to the clamped solve") {
        ModelParams perfect = model;
        perfect.theta = 0.0;
        OracleLabels sp = sample_oracle(sigma0, perfect.eta, 0.0, 4);
        SslResult res = run_algorithm1(g, sp, perfect);
        CHECK(std::isinf(res.lambda_used));
        for (std::int64_t i : sp.labeled)
            CHECK(res.score.x[static_cast<std::size_t>(i)] ==
                  static_cast<double>(sp.s[static_cast<std::size_t>(i)]));
    }
    SUBCASE("deterministic under a fixed seed") {
        ModelParams noisy = model;
        noisy.eta = 0.15;
        noisy.theta = 0.05;
        OracleLabels sn = sample_oracle(sigma0, noisy.eta, noisy.theta, 4);
        SslResult a = run_algorithm1(g, sn, noisy);
        SslResult b = run_algorithm1(g, sn, noisy);
        CHECK(a.score.x == b.score.x);
        CHECK(a.alpha_used == b.alpha_used);
    }
}

TEST_CASE("sign labeling is scale invariant and maps zero to -1") {
    ScoreVector sv = ScoreVector::from_scores({0.5, -0.2, 0.0, 3.0});
    CHECK(sv.labels == std::vector<std::int8_t>{1, -1, -1, 1});
    ScoreVector scaled = ScoreVector::from_scores({0.5e6, -0.2e6, 0.0, 3.0e6});
    CHECK(scaled.labels == sv.labels);
}
