#include "hiod/io.hpp"
#include "hiod/montecarlo.hpp"
#include "hiod/simulate.hpp"
#include "hiod/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int cmd_simulate(const std::string& config_path, const std::string& output_path) {
    const hiod::Scenario sc = hiod::io::read_scenario_config(config_path);
    const auto obs = hiod::generate_observations(sc);
    hiod::io::write_observations_csv(output_path, obs);
    std::cout << "wrote " << obs.size() << " observations to " << output_path << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& obs_path, double mu, const std::string& output_path,
              bool echo_iterations, double e_min, int max_iter) {
    const auto obs = hiod::io::read_observations_csv(obs_path);
    if (obs.size() < 4) {
        throw hiod::io::ConfigError(obs_path + ": at least 4 observations required, got " +
                                    std::to_string(obs.size()));
    }
    for (std::size_t i = 0; i + 1 < obs.size(); ++i) {
        if (!(obs[i + 1].t > obs[i].t)) {
            throw hiod::io::ConfigError(obs_path + ": observation times must be strictly "
                                                   "increasing (row " +
                                        std::to_string(i + 3) + ")");
        }
    }

    hiod::SolveOptions options;
    options.e_min = e_min;
    options.max_iterations = max_iter;
    const hiod::SolveReport report = hiod::solve(obs, hiod::CentralBody{mu}, options);

    if (echo_iterations) {
        std::printf("%3s  %-12s  %-10s  %-10s  %-10s\n", "m", "residual", "R", "c1", "c2");
        for (std::size_t m = 0; m < report.residual_history.size(); ++m) {
            const auto& x = report.iterate_history[m];
            std::printf("%3zu  %-12.6g  %-10.6g  %-10.6g  %-10.6g\n", m,
                        report.residual_history[m], x.R, x.c1, x.c2);
        }
    }

    hiod::io::write_solution_json(output_path, report, mu);
    if (!report.converged) {
        std::cerr << "solver did not converge after " << report.iterations
                  << " iterations; best solution written to " << output_path << "\n";
        return kExitNumerical;
    }
    std::cout << "solution written to " << output_path << "\n";
    return kExitOk;
}

int cmd_montecarlo(const std::string& config_path, const std::string& output_path,
                   std::string per_trial_path) {
    const hiod::io::MonteCarloRun run = hiod::io::read_montecarlo_config(config_path);
    if (per_trial_path.empty()) {
        std::filesystem::path p(output_path);
        p.replace_extension();
        per_trial_path = p.string() + "_trials.csv";
    }

    std::vector<hiod::McResult> results;
    std::vector<hiod::McSummaryRow> rows;
    for (std::size_t i = 0; i < run.scenarios.size(); ++i) {
        hiod::McConfig cfg;
        cfg.scenario = run.scenarios[i];
        cfg.trials = run.trials;
        cfg.noise_levels_deg = run.noise_levels_deg;
        // Each scenario gets its own seed root; the Rng mixes it before use.
        cfg.master_seed = run.master_seed + i;
        cfg.threads = run.threads;
        results.push_back(hiod::run_monte_carlo(cfg));
        const auto scenario_rows = hiod::summarize(results.back());
        rows.insert(rows.end(), scenario_rows.begin(), scenario_rows.end());
    }

    hiod::io::write_text(output_path, hiod::io::summary_to_csv(rows));
    hiod::io::write_text(per_trial_path, hiod::io::trials_to_csv(results));
    std::cout << "summary written to " << output_path << ", per-trial errors to "
              << per_trial_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heading-only initial orbit determination via the orbital hodograph"};
    app.require_subcommand(1);

    std::string config_path, output_path, obs_path, per_trial_path;
    double mu = 0.0;
    double e_min = 1e-3;
    int max_iter = 100;
    bool echo_iterations = false;

    auto* sim = app.add_subcommand("simulate", "Generate heading observations from a config");
    sim->add_option("--config", config_path, "scenario config (JSON)")->required();
    sim->add_option("--output", output_path, "observation CSV to write")->required();

    auto* slv = app.add_subcommand("solve", "Solve IOD from an observation file");
    slv->add_option("--observations", obs_path, "observation CSV (t_sec,sx,sy,sz)")->required();
    slv->add_option("--mu", mu, "gravitational parameter [km^3/s^2]")->required();
    slv->add_option("--output", output_path, "solution JSON to write")->required();
    slv->add_flag("--echo-iterations", echo_iterations, "print the iteration table");
    slv->add_option("--e-min", e_min, "circular-regularization threshold");
    slv->add_option("--max-iter", max_iter, "iteration cap");

    auto* mc = app.add_subcommand("montecarlo", "Run a Monte Carlo noise study");
    mc->add_option("--config", config_path, "Monte Carlo config (JSON)")->required();
    mc->add_option("--output", output_path, "summary CSV to write")->required();
    mc->add_option("--per-trial", per_trial_path, "per-trial CSV (default: <output>_trials.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, output_path);
        if (slv->parsed()) {
            return cmd_solve(obs_path, mu, output_path, echo_iterations, e_min, max_iter);
        }
        return cmd_montecarlo(config_path, output_path, per_trial_path);
    } catch (const hiod::io::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumerical;
    }
}
