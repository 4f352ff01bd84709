#include <doctest.h>

#include <cmath>

#include "sbmssl/graph.hpp"
#include "sbmssl/oracle.hpp"

using namespace sbmssl;

namespace {

std::vector<std::int8_t> alternating(std::int64_t n) {
    std::vector<std::int8_t> sigma(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        sigma[static_cast<std::size_t>(i)] = i % 2 == 0 ? 1 : -1;
    return sigma;
}

}  // namespace

TEST_CASE("perfect full oracle reveals sigma0 exactly") {
    auto sigma = alternating(100);
    OracleLabels s = sample_oracle(sigma, 1.0, 0.0, 3);
    CHECK(s.s == sigma);
    CHECK(s.num_labeled() == 100);
}

TEST_CASE("silent oracle reveals nothing") {
    auto sigma = alternating(50);
    OracleLabels s = sample_oracle(sigma, 0.0, 0.0, 3);
    CHECK(s.num_labeled() == 0);
    for (auto v : s.s) CHECK(v == 0);
}

TEST_CASE("labeled fraction and error rate match their binomial moments") {
    const std::int64_t n = 10000;
    auto sigma = alternating(n);
    OracleLabels s = sample_oracle(sigma, 0.09, 0.01, 12345);

    const double frac = static_cast<double>(s.num_labeled()) / static_cast<double>(n);
    const double frac_sd = std::sqrt(0.1 * 0.9 / static_cast<double>(n));
    CHECK(std::abs(frac - 0.1) < 4.0 * frac_sd);

    std::int64_t wrong = 0;
    for (std::int64_t i : s.labeled)
        wrong += s.s[static_cast<std::size_t>(i)] != sigma[static_cast<std::size_t>(i)];
    const double err = static_cast<double>(wrong) / static_cast<double>(s.num_labeled());
    const double err_sd = std::sqrt(0.1 * 0.9 / static_cast<double>(s.num_labeled()));
    CHECK(std::abs(err - 0.1) < 4.0 * err_sd);
}

TEST_CASE("agreement counts partition the labeled set") {
    auto sigma = alternating(500);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        OracleLabels s = sample_oracle(sigma, 0.3, 0.2, seed);
        std::int64_t agree = 0, disagree = 0;
        for (std::int64_t i : s.labeled) {
            if (s.s[static_cast<std::size_t>(i)] == sigma[static_cast<std::size_t>(i)])
                ++agree;
            else
                ++disagree;
        }
        CHECK(agree + disagree == s.num_labeled());
    }
}

TEST_CASE("error_rate values and the informativeness equivalence") {
    CHECK(error_rate(0.09, 0.01) == doctest::Approx(0.1));
    CHECK(error_rate(0.05, 0.05) == doctest::Approx(0.5));
    CHECK(error_rate(0.4, 0.0) == 0.0);
    CHECK_THROWS_AS(error_rate(0.0, 0.0), std::domain_error);
    for (auto [eta, theta] : std::vector<std::pair<double, double>>{
             {0.2, 0.1}, {0.1, 0.2}, {0.3, 0.3}, {0.5, 0.0}})
        CHECK(informative(eta, theta) == (error_rate(eta, theta) < 0.5));
}

TEST_CASE("oracle rejects invalid probabilities and bad vectors") {
    auto sigma = alternating(10);
    CHECK_THROWS_AS(sample_oracle(sigma, 0.8, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_oracle(sigma, -0.1, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(OracleLabels::from_vector({0, 2, 1}), std::invalid_argument);
}

TEST_CASE("oracle sampling is deterministic under a fixed seed") {
    auto sigma = alternating(1000);
    OracleLabels a = sample_oracle(sigma, 0.2, 0.05, 99);
    OracleLabels b = sample_oracle(sigma, 0.2, 0.05, 99);
    CHECK(a.s == b.s);
}
