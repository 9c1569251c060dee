#pragma once

#include <string>
#include <vector>

#include "banditlab/simulator.hpp"
#include "banditlab/trainers.hpp"

// Sweep orchestration: logging-policy x method x sample-size grids over
// repeated seeds, each cell trained on fresh logs and evaluated by a
// simulated A/B test on a disjoint seed stream.
//
// Seed derivation (fixed, documented): for master seed m and seed index s,
//   training  stream uses mix_seed(m, s, kTrainTag)
//   A/B eval  stream uses mix_seed(m, s, kEvalTag)
//   holdout   stream uses mix_seed(m, s, kHoldoutTag)
// so evaluation users never appear in training, and any cell rerun in
// isolation reproduces its row from the full sweep.

namespace banditlab {

inline constexpr std::uint64_t kTrainTag = 0x747261696eULL;
inline constexpr std::uint64_t kEvalTag = 0x6576616cULL;
inline constexpr std::uint64_t kHoldoutTag = 0x686f6c64ULL;

struct ExperimentConfig {
    SimConfig sim;
    std::string logging_policy = "popularity";
    std::vector<Method> methods{Method::MaxLikelihood, Method::Reweighted,
                                Method::ContextualBandit, Method::BayesMap};
    std::vector<int> train_sizes{2000, 4000, 6000, 8000};
    int ab_test_size = 10000;
    int n_seeds = 20;
    PriorSpec prior{-6.0, 0.01, 0.01, 0};  // num_items filled from sim
    FitOptions fit_options;
    // Rows are deterministic functions of this config. wall_time is 0 unless
    // timing is requested, because measured times would break byte-identical
    // reruns; per-cell timings always go to the progress stream.
    bool record_timings = false;
    int jobs = 1;

    void validate() const;
};

struct ResultRow {
    std::string method;
    std::string logging_policy;
    int train_size = 0;
    int seed = 0;
    double ab_ctr = 0.0;
    double ab_stderr = 0.0;
    double ips_value_on_holdout = 0.0;
    bool train_converged = false;
    double wall_time = 0.0;  // seconds
};

// Runs the sweep; rows come back in (method, size, seed) order regardless of
// how cells were scheduled. Fit failures are recorded in-row
// (train_converged = false, the start point evaluated) and the run continues.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// One cell in isolation; used by tests for the cell-independence property.
ResultRow run_experiment_cell(const ExperimentConfig& config, Method method,
                              int train_size, int seed_index);

// Fixed column order: method, logging_policy, train_size, seed, ab_ctr,
// ab_stderr, ips_value_on_holdout, train_converged, wall_time. Floats carry
// 6 significant digits; fields are quoted RFC-4180 style when needed.
void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path);
std::vector<ResultRow> read_results_csv(const std::string& path);

// One line chart per logging policy present in `rows`: median A/B CTR per
// method over train size with an interquartile band.
void emit_plot_svg(const std::vector<ResultRow>& rows, const std::string& path);

// Deterministic order-statistic helpers shared with the acceptance suite.
double median(std::vector<double> values);
double quantile(std::vector<double> values, double q);  // linear interpolation

}  // namespace banditlab
