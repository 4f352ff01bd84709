#include "sbmssl/oracle.hpp"

#include <stdexcept>

#include "sbmssl/rng.hpp"

namespace sbmssl {

OracleLabels OracleLabels::from_vector(std::vector<std::int8_t> values) {
    OracleLabels out;
    out.s = std::move(values);
    for (std::size_t i = 0; i < out.s.size(); ++i) {
        if (out.s[i] != -1 && out.s[i] != 0 && out.s[i] != 1)
            throw std::invalid_argument("OracleLabels: entries must lie in {-1, 0, +1}");
        if (out.s[i] != 0) out.labeled.push_back(static_cast<std::int64_t>(i));
    }
    return out;
}

OracleLabels sample_oracle(const std::vector<std::int8_t>& sigma0, double eta, double theta,
                           std::uint64_t seed) {
    if (eta < 0.0 || theta < 0.0 || eta + theta > 1.0)
        throw std::invalid_argument("sample_oracle: need eta, theta >= 0 and eta + theta <= 1");
    std::mt19937_64 gen(seed);
    std::vector<std::int8_t> s(sigma0.size(), 0);
    for (std::size_t i = 0; i < sigma0.size(); ++i) {
        const double u = uniform01(gen);
        if (u < eta)
            s[i] = sigma0[i];
        else if (u < eta + theta)
            s[i] = static_cast<std::int8_t>(-sigma0[i]);
    }
    return OracleLabels::from_vector(std::move(s));
}

double error_rate(double eta, double theta) {
    if (eta + theta <= 0.0)
        throw std::domain_error("error_rate: undefined for eta + theta = 0");
    return theta / (eta + theta);
}

}  // namespace sbmssl
