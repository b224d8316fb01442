#include "hiod/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace hiod {

namespace {

McLevelStats level_stats(double noise_deg, std::vector<McTrialRecord>& records) {
    McLevelStats st;
    st.noise_deg = noise_deg;
    st.trials = static_cast<int>(records.size());

    double a_sq = 0.0, e_sq = 0.0, a_sum = 0.0, e_sum = 0.0;
    int n_ok = 0;
    for (const auto& rec : records) {
        if (!rec.converged) {
            ++st.failures;
            continue;
        }
        ++n_ok;
        a_sq += rec.a_err * rec.a_err;
        e_sq += rec.e_err * rec.e_err;
        a_sum += rec.a_err;
        e_sum += rec.e_err;
    }
    if (n_ok == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        st.a_error_sigma = st.e_error_sigma = nan;
        st.a_error_mean = st.a_error_std = nan;
        st.e_error_mean = st.e_error_std = nan;
        return st;
    }
    st.a_error_sigma = std::sqrt(a_sq / n_ok);
    st.e_error_sigma = std::sqrt(e_sq / n_ok);
    st.a_error_mean = a_sum / n_ok;
    st.e_error_mean = e_sum / n_ok;
    st.a_error_std = std::sqrt(std::max(0.0, a_sq / n_ok - st.a_error_mean * st.a_error_mean));
    st.e_error_std = std::sqrt(std::max(0.0, e_sq / n_ok - st.e_error_mean * st.e_error_mean));
    return st;
}

}  // namespace

McResult run_monte_carlo(const McConfig& cfg) {
    if (cfg.trials < 1) {
        throw std::invalid_argument("montecarlo: trials must be >= 1");
    }
    if (cfg.noise_levels_deg.empty()) {
        throw std::invalid_argument("montecarlo: at least one noise level required");
    }
    Scenario truth = cfg.scenario;
    truth.noise_sigma_deg = 0.0;
    validate(truth);

    // Noise-free base observations; each trial perturbs these headings.
    const std::vector<HeadingObservation> base = generate_observations(truth);

    McResult result;
    result.observations = static_cast<int>(base.size());

    const Rng master(cfg.master_seed);

    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;

    for (std::size_t level = 0; level < cfg.noise_levels_deg.size(); ++level) {
        const double sigma = cfg.noise_levels_deg[level];
        const Rng level_rng = master.substream(level);
        std::vector<McTrialRecord> records(static_cast<std::size_t>(cfg.trials));

        auto run_trial = [&](int k) {
            McTrialRecord rec;
            rec.trial = k;
            rec.noise_deg = sigma;
            Rng trial_rng = level_rng.substream(static_cast<std::uint64_t>(k));
            std::vector<HeadingObservation> obs = base;
            for (std::size_t i = 0; i < obs.size(); ++i) {
                Rng obs_rng = trial_rng.substream(i);
                obs[i].s = perturb_heading(obs[i].s, sigma, obs_rng);
            }
            try {
                const SolveReport rep = solve(obs, truth.body, cfg.solver);
                rec.converged = rep.converged;
                if (rep.converged) {
                    rec.a_err = rep.elements.a - truth.elements.a;
                    rec.e_err = rep.elements.e - truth.elements.e;
                }
            } catch (const std::exception&) {
                rec.converged = false;
            }
            records[static_cast<std::size_t>(k)] = rec;
        };

        if (n_threads == 1 || cfg.trials < 32) {
            for (int k = 0; k < cfg.trials; ++k) run_trial(k);
        } else {
            std::atomic<int> next{0};
            std::vector<std::thread> workers;
            workers.reserve(n_threads);
            for (unsigned w = 0; w < n_threads; ++w) {
                workers.emplace_back([&] {
                    for (int k = next.fetch_add(1); k < cfg.trials; k = next.fetch_add(1)) {
                        run_trial(k);
                    }
                });
            }
            for (auto& t : workers) t.join();
        }

        result.levels.push_back(level_stats(sigma, records));
        result.trials.insert(result.trials.end(), records.begin(), records.end());
    }
    return result;
}

std::vector<McSummaryRow> summarize(const McResult& result) {
    std::vector<McSummaryRow> rows;
    rows.reserve(result.levels.size());
    for (const auto& lv : result.levels) {
        McSummaryRow row;
        row.observations = result.observations;
        row.noise_deg = lv.noise_deg;
        row.trials = lv.trials;
        row.a_error_sigma = lv.a_error_sigma;
        row.e_error_sigma = lv.e_error_sigma;
        row.failures = lv.failures;
        row.a_error_mean = lv.a_error_mean;
        row.a_error_std = lv.a_error_std;
        row.e_error_mean = lv.e_error_mean;
        row.e_error_std = lv.e_error_std;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hiod
