#pragma once

#include "hiod/montecarlo.hpp"
#include "hiod/simulate.hpp"
#include "hiod/solver.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace hiod::io {

/// Thrown for malformed configs and input files (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- observation CSV (header: t_sec,sx,sy,sz; LF line endings) ----

std::string observations_to_csv(std::span<const HeadingObservation> obs);
void write_observations_csv(const std::filesystem::path& path,
                            std::span<const HeadingObservation> obs);

/// Parses and validates observation rows; headings must be unit to 1e-6 and
/// are renormalized on ingest.
std::vector<HeadingObservation> read_observations_csv(const std::filesystem::path& path);

// ---- solution JSON ----

nlohmann::json solution_to_json(const SolveReport& report, double mu);
void write_solution_json(const std::filesystem::path& path, const SolveReport& report,
                         double mu);

// ---- configs (strict: schema_version checked, unknown fields rejected) ----

Scenario read_scenario_config(const std::filesystem::path& path);

struct MonteCarloRun {
    std::vector<Scenario> scenarios;
    int trials = 1;
    std::vector<double> noise_levels_deg;
    std::uint64_t master_seed = 0;
    int threads = 0;
};

MonteCarloRun read_montecarlo_config(const std::filesystem::path& path);

// ---- Monte Carlo CSV outputs ----

std::string summary_to_csv(std::span<const McSummaryRow> rows);
std::vector<McSummaryRow> parse_summary_csv(const std::string& text);

std::string trials_to_csv(std::span<const McResult> results);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hiod::io
