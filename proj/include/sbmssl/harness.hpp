#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbmssl/graph.hpp"
#include "sbmssl/oracle.hpp"
#include "sbmssl/ssl.hpp"

namespace sbmssl {

enum class Algorithm { Algorithm1, Algorithm1Perfect, Spectral, LabelSpreading, BruteMap };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

enum class Scope { UnlabeledOnly, AllNodes };

std::string scope_name(Scope s);
Scope parse_scope(const std::string& name);

/// Sweep description: model grids, algorithm set, replication protocol and
/// parameter overrides. The oracle is given either as (eta, theta) grids or
/// as (labeled_frac, error_rate) grids. With `coupled`, equal-length lists
/// are zipped positionally (length-1 lists broadcast) instead of forming a
/// Cartesian product.
struct ExperimentSpec {
    std::vector<std::int64_t> n;
    std::vector<double> p_in;
    std::vector<double> p_out;
    std::vector<double> eta;
    std::vector<double> theta;
    std::vector<double> labeled_frac;
    std::vector<double> error_rate;
    std::vector<Algorithm> algorithms;
    std::int64_t replications = 1;
    std::uint64_t base_seed = 1;
    bool coupled = false;
    bool balanced = true;
    bool self_loops = false;
    Scope scope = Scope::UnlabeledOnly;
    std::optional<double> tau;
    std::optional<double> lambda;
    std::optional<double> alpha;
    std::string alpha_policy = "spectral-norm";  // or "mean-field"
    double beta = 0.9;
    std::string output;
    bool dump_labels = false;

    void validate() const;
};

/// One CSV record; self-describing (all sweep coordinates repeated).
struct ResultRow {
    std::int64_t n = 0;
    double p_in = 0, p_out = 0, eta = 0, theta = 0, tau = 0, lambda = 0;
    std::string alpha_policy;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::int64_t replication = 0;
    double labeled_frac_realized = 0;
    double error_rate_realized = 0;
    double accuracy = 0;
    std::int64_t misclassified = 0;
    std::string scope;
    double runtime_ms = 0;
    std::string flags;
};

/// Per-replication labels, kept only when dump-labels is requested.
struct TaskLabels {
    ModelParams model;
    std::int64_t replication = 0;
    std::uint64_t seed = 0;
    std::vector<std::int8_t> sigma0;
    std::vector<std::int8_t> oracle;
    std::vector<std::pair<std::string, std::vector<std::int8_t>>> predictions;
};

/// Match fraction of pred against truth on the index scope. allow_flip
/// takes the better of the two global orientations (unsupervised methods
/// only; oracle-anchored methods must not flip).
double accuracy(const std::vector<std::int8_t>& pred, const std::vector<std::int8_t>& truth,
                const std::vector<std::int64_t>& scope, bool allow_flip);

/// Pure function of the sweep coordinates: re-running any single grid
/// point in isolation reproduces its rows exactly.
std::uint64_t child_seed(std::uint64_t base_seed, const ModelParams& model,
                         std::int64_t replication);

std::vector<ModelParams> expand_grid(const ExperimentSpec& spec);

/// Executes grid x replications (optionally across a worker pool), one row
/// per algorithm. Row order is deterministic (task order, not completion
/// order); per-row failures are flagged and the run continues.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int threads = 1,
                                      std::vector<TaskLabels>* label_dump = nullptr);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_csv(const std::string& path);

struct SummaryGroup {
    std::int64_t n = 0;
    double p_in = 0, p_out = 0, eta = 0, theta = 0;
    std::string algorithm;
    std::string scope;
    std::int64_t count = 0;
    double mean_accuracy = 0;
    double stderr_accuracy = 0;  // sample std / sqrt(count)
};

/// Grouped means and standard errors per sweep coordinate x algorithm.
/// Rows flagged as failures (NaN accuracy) are skipped with a warning.
std::vector<SummaryGroup> summarize(const std::vector<ResultRow>& rows);

void print_summary_table(const std::vector<SummaryGroup>& groups, std::ostream& out);
std::string summary_to_json(const std::vector<SummaryGroup>& groups);

/// Flat key = value document; '#' starts a comment; list-valued keys are
/// whitespace- or comma-separated. Unknown keys are errors.
ExperimentSpec parse_spec_file(const std::string& path);

void write_label_dump(const std::vector<TaskLabels>& dump, const std::string& path);

}  // namespace sbmssl
