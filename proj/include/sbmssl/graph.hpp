#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sbmssl {

struct Edge {
    std::int64_t u = 0;
    std::int64_t v = 0;
    double w = 1.0;
};

class EdgeListFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Undirected weighted graph stored as a symmetric CSR adjacency.
/// Immutable after construction; duplicate input edges are merged by
/// summing their weights. A self-loop (i,i) contributes its weight once
/// to A_ii and once to the degree of i.
class SparseGraph {
  public:
    SparseGraph() = default;
    SparseGraph(std::int64_t n, const std::vector<Edge>& edges);

    std::int64_t n() const { return n_; }
    /// Number of stored undirected edges (self-loops counted once).
    std::int64_t num_edges() const { return num_edges_; }
    std::int64_t num_self_loops() const { return num_self_loops_; }
    /// Number of duplicate input edges merged at construction.
    std::int64_t duplicates_merged() const { return duplicates_merged_; }

    const std::vector<double>& degrees() const { return degrees_; }
    double degree(std::int64_t i) const { return degrees_[static_cast<std::size_t>(i)]; }
    double max_degree() const;
    /// Sum over all ordered pairs of A_ij (= 2 * off-diagonal weight + diagonal weight).
    double adjacency_sum() const { return adjacency_sum_; }

    /// y = A x (self-loops act as diagonal entries).
    void apply(std::span<const double> x, std::span<double> y) const;

    /// A_ij, 0 if no edge. O(log deg).
    double weight(std::int64_t i, std::int64_t j) const;

    /// Visits each undirected edge once as (u, v, w) with u <= v.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (std::int64_t i = 0; i < n_; ++i) {
            for (std::size_t k = row_ptr_[static_cast<std::size_t>(i)];
                 k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
                if (cols_[k] >= i) f(i, cols_[k], wts_[k]);
            }
        }
    }

    std::span<const std::int64_t> neighbors(std::int64_t i) const {
        return {cols_.data() + row_ptr_[static_cast<std::size_t>(i)],
                row_ptr_[static_cast<std::size_t>(i) + 1] - row_ptr_[static_cast<std::size_t>(i)]};
    }
    std::span<const double> neighbor_weights(std::int64_t i) const {
        return {wts_.data() + row_ptr_[static_cast<std::size_t>(i)],
                row_ptr_[static_cast<std::size_t>(i) + 1] - row_ptr_[static_cast<std::size_t>(i)]};
    }

    bool operator==(const SparseGraph& other) const;

  private:
    std::int64_t n_ = 0;
    std::int64_t num_edges_ = 0;
    std::int64_t num_self_loops_ = 0;
    std::int64_t duplicates_merged_ = 0;
    double adjacency_sum_ = 0.0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::int64_t> cols_;
    std::vector<double> wts_;
    std::vector<double> degrees_;
};

/// Two-block SBM and oracle parameters with the derived quantities used
/// throughout. Strict p_out < p_in is only needed by the closed-form
/// parameter formulas, not by the sampler, so validate() accepts any
/// probabilities.
struct ModelParams {
    std::int64_t n = 0;
    double p_in = 0.0;
    double p_out = 0.0;
    double eta = 0.0;
    double theta = 0.0;

    void validate() const;
    /// Average degree n (p_in + p_out) / 2.
    double d() const { return static_cast<double>(n) * (p_in + p_out) / 2.0; }
    /// Mean-field shift n (p_in - p_out) / 2.
    double alpha_mf() const { return static_cast<double>(n) * (p_in - p_out) / 2.0; }
    /// Oracle error rate theta / (eta + theta); requires eta + theta > 0.
    double s() const;
    bool informative() const { return eta > theta; }
};

/// Sample a symmetric two-block SBM graph together with its ground truth.
/// balanced: the first floor(n/2) nodes form cluster +1; otherwise labels
/// are i.i.d. uniform over {-1,+1}. Self-loops (probability p_in per node)
/// are off by default. Identical seed gives a bit-identical graph.
std::pair<SparseGraph, std::vector<std::int8_t>> sample_ssbm(const ModelParams& params,
                                                             std::uint64_t seed,
                                                             bool balanced = true,
                                                             bool self_loops = false);

/// Cap weighted degrees at d_max by scaling each edge with the smaller of
/// its endpoints' factors min(1, d_max/deg). Returns the input unchanged
/// when no degree exceeds d_max; idempotent.
SparseGraph degree_regularize(const SparseGraph& g, double d_max);

SparseGraph load_edge_list(const std::string& path);
void save_edge_list(const SparseGraph& g, const std::string& path);

}  // namespace sbmssl
