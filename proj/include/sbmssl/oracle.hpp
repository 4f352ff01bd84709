#pragma once

#include <cstdint>
#include <vector>

namespace sbmssl {

/// Per-node side information in {-1, 0, +1}; zero means "not revealed".
/// The full length-n vector is kept so the labeled-projection P_L and the
/// labeled/unlabeled split are derivable without extra structure.
struct OracleLabels {
    std::vector<std::int8_t> s;
    std::vector<std::int64_t> labeled;  // support of s, ascending

    static OracleLabels from_vector(std::vector<std::int8_t> values);

    std::int64_t n() const { return static_cast<std::int64_t>(s.size()); }
    std::int64_t num_labeled() const { return static_cast<std::int64_t>(labeled.size()); }
    bool is_labeled(std::int64_t i) const { return s[static_cast<std::size_t>(i)] != 0; }
};

/// Reveal each node's true label with probability eta, the flipped label
/// with probability theta, nothing otherwise; independent across nodes.
OracleLabels sample_oracle(const std::vector<std::int8_t>& sigma0, double eta, double theta,
                           std::uint64_t seed);

/// theta / (eta + theta); throws for eta + theta = 0.
double error_rate(double eta, double theta);

inline bool informative(double eta, double theta) { return eta > theta; }

}  // namespace sbmssl
