#pragma once

#include "hiod/simulate.hpp"
#include "hiod/solver.hpp"

#include <cstdint>
#include <vector>

namespace hiod {

struct McConfig {
    Scenario scenario;                   // per-level noise sigma is overridden
    int trials = 1;
    std::vector<double> noise_levels_deg;
    std::uint64_t master_seed = 0;
    SolveOptions solver;
    int threads = 0;  // 0 = hardware concurrency; results independent of it
};

struct McTrialRecord {
    int trial = 0;
    double noise_deg = 0.0;
    double a_err = 0.0;  // estimate - truth [km]
    double e_err = 0.0;
    bool converged = false;
};

/// Per-noise-level statistics over converged trials. The headline 1-sigma
/// values are the RMS of signed errors about zero; mean and (population)
/// standard deviation are carried alongside so either reading is available.
struct McLevelStats {
    double noise_deg = 0.0;
    int trials = 0;
    int failures = 0;
    double a_error_sigma = 0.0;  // RMS about zero [km]
    double e_error_sigma = 0.0;
    double a_error_mean = 0.0;
    double a_error_std = 0.0;
    double e_error_mean = 0.0;
    double e_error_std = 0.0;
};

struct McResult {
    int observations = 0;  // headings per trial
    std::vector<McLevelStats> levels;
    std::vector<McTrialRecord> trials;  // level-major, trial order
};

/// Summary row mirroring the performance table layout plus a failure column.
struct McSummaryRow {
    int observations = 0;
    double noise_deg = 0.0;
    int trials = 0;
    double a_error_sigma = 0.0;
    double e_error_sigma = 0.0;
    int failures = 0;
    double a_error_mean = 0.0;
    double a_error_std = 0.0;
    double e_error_mean = 0.0;
    double e_error_std = 0.0;
};

/// Runs trials x noise-levels solves on noisy observations of the scenario's
/// truth orbit. Trial (level l, index k) draws from the substream
/// (master_seed, l, k); trials may execute on any number of worker threads
/// with bitwise-identical results.
McResult run_monte_carlo(const McConfig& cfg);

std::vector<McSummaryRow> summarize(const McResult& result);

}  // namespace hiod
