#include "hiod/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hiod {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

bool feasible(const ParamVector& x) {
    return x.R > 0.0 && x.R * x.R - x.c1 * x.c1 - x.c2 * x.c2 > 0.0;
}

struct PairSystem {
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> dt;            // measured time of flight per pair
    std::vector<Vec3> s;               // in-plane headings
    Vec3 w_hat = Vec3::UnitZ();
    double mu = 0.0;
    double e_min = 1e-3;

    // f per pair with the periapsis count re-selected at x. The counts come
    // from per-observation revolution counters (a consecutive pair whose g
    // decreases has wrapped), not from an independent per-pair choice: the
    // counts of a physical orbit are additive, k_ij = K_j - K_i, and
    // enforcing that closes off spurious exact fits that four-observation
    // systems otherwise admit.
    void predict(const ParamVector& x, std::vector<double>& out) const {
        const double cc = x.c1 * x.c1 + x.c2 * x.c2;
        const double disc = x.R * x.R - cc;
        if (!(disc > 0.0)) {
            throw NonEllipticalError("solve: non-elliptical trial parameters");
        }
        const double n = std::pow(disc, 1.5) / mu;

        std::vector<double> g(s.size());
        std::vector<int> revs(s.size(), 0);
        for (std::size_t i = 0; i < s.size(); ++i) {
            g[i] = mean_anomaly_g(x, s[i], w_hat, e_min);
            if (i > 0) {
                revs[i] = revs[i - 1] + (g[i] < g[i - 1] ? 1 : 0);
            }
        }
        out.resize(pairs.size());
        for (std::size_t r = 0; r < pairs.size(); ++r) {
            const auto [i, j] = pairs[r];
            out[r] = (2.0 * M_PI * (revs[j] - revs[i]) + g[j] - g[i]) / n;
        }
    }

    double objective(const ParamVector& x, std::vector<double>& scratch) const {
        predict(x, scratch);
        double sum = 0.0;
        for (std::size_t r = 0; r < pairs.size(); ++r) {
            const double res = dt[r] - scratch[r];
            sum += res * res;
        }
        return sum;
    }
};

ParamVector shifted(const ParamVector& x, int component, double delta) {
    ParamVector y = x;
    (component == 0 ? y.R : component == 1 ? y.c1 : y.c2) += delta;
    return y;
}

struct LmOutcome {
    ParamVector x;
    double obj = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;
    std::vector<ParamVector> iterate_history;
};

// One Levenberg-Marquardt descent from x0. Damping starts at 1e-3 of the
// mean J^T J diagonal, x10 on rejection, /10 on acceptance; trial steps that
// leave the elliptical domain count as rejections.
LmOutcome run_lm(const PairSystem& sys, const ParamVector& x0, const SolveOptions& options,
                 double floor_tol);

std::vector<double> pairwise_radius_estimates(std::span<const Vec3> s_plane,
                                              std::span<const double> times,
                                              const Vec3& w_hat, double mu) {
    std::vector<double> estimates;
    for (std::size_t i = 0; i < s_plane.size(); ++i) {
        for (std::size_t j = i + 1; j < s_plane.size(); ++j) {
            const double dt = times[j] - times[i];
            if (!(dt > 0.0)) {
                throw std::invalid_argument(
                    "initial_guess: times must be strictly increasing");
            }
            double dbeta = std::atan2(w_hat.dot(s_plane[i].cross(s_plane[j])),
                                      s_plane[i].dot(s_plane[j]));
            if (dbeta < 0.0) dbeta += kTwoPi;
            if (dbeta > 0.0) {
                estimates.push_back(std::cbrt(mu * dbeta / dt));
            }
        }
    }
    return estimates;
}

// Finite-difference Jacobian of the stacked f values. Central differences,
// except that the c' columns switch to one-sided steps when |c'| < h: the
// |c'| term of g has a kink at c' = 0 that a symmetric stencil cancels
// exactly, which would leave the circular initial guess with a zero gradient
// in the center coordinates.
void jacobian(const PairSystem& sys, const ParamVector& x, Eigen::MatrixXd& J,
              std::vector<double>& fp, std::vector<double>& fm) {
    const double comps[3] = {x.R, x.c1, x.c2};
    const double c_norm = std::hypot(x.c1, x.c2);
    J.resize(static_cast<Eigen::Index>(sys.pairs.size()), 3);
    for (int c = 0; c < 3; ++c) {
        const double h = std::max(1e-7, 1e-7 * std::abs(comps[c]));
        double scale = 2.0 * h;
        ParamVector xp = shifted(x, c, h);
        ParamVector xm = shifted(x, c, -h);
        if (c > 0 && c_norm < h) {
            // |c'| has a kink at zero that a symmetric stencil cancels
            // exactly; sample the one-sided slope instead.
            xm = x;
            scale = h;
        } else if (!feasible(xp)) {
            xp = x;
            scale = h;
        } else if (!feasible(xm)) {
            xm = x;
            scale = h;
        }
        sys.predict(xp, fp);
        sys.predict(xm, fm);
        for (std::size_t r = 0; r < sys.pairs.size(); ++r) {
            J(static_cast<Eigen::Index>(r), c) = (fp[r] - fm[r]) / scale;
        }
    }
}

LmOutcome run_lm(const PairSystem& sys, const ParamVector& x0, const SolveOptions& options,
                 double floor_tol) {
    LmOutcome out;
    std::vector<double> scratch, fp, fm;
    ParamVector x = x0;
    double obj = sys.objective(x, scratch);
    out.residual_history.push_back(obj);
    out.iterate_history.push_back(x);

    Eigen::MatrixXd J;
    Eigen::VectorXd residual(static_cast<Eigen::Index>(sys.pairs.size()));
    double lambda = -1.0;
    bool converged = obj <= floor_tol;

    for (int iter = 0; iter < options.max_iterations && !converged; ++iter) {
        sys.predict(x, scratch);
        for (std::size_t r = 0; r < sys.pairs.size(); ++r) {
            residual(static_cast<Eigen::Index>(r)) = sys.dt[r] - scratch[r];
        }
        jacobian(sys, x, J, fp, fm);
        const Mat3 JtJ = (J.transpose() * J).eval();
        const Vec3 Jtr = J.transpose() * residual;
        if (lambda < 0.0) {
            lambda = 1e-3 * JtJ.trace() / 3.0;
        }

        bool accepted = false;
        Vec3 step = Vec3::Zero();
        for (int trial = 0; trial < 60; ++trial) {
            const Mat3 A = JtJ + lambda * Mat3::Identity();
            step = A.ldlt().solve(Jtr);
            const ParamVector xn{x.R + step(0), x.c1 + step(1), x.c2 + step(2)};
            if (feasible(xn)) {
                const double objn = sys.objective(xn, scratch);
                if (objn < obj) {
                    x = xn;
                    obj = objn;
                    lambda = std::max(lambda / 10.0, 1e-300);
                    accepted = true;
                    break;
                }
            }
            lambda *= 10.0;
            if (lambda > 1e120) break;
        }

        if (!accepted && std::hypot(x.c1, x.c2) <= options.e_min * x.R) {
            // Inside the regularized branch the model carries no information
            // about the center direction (g depends on c' only through its
            // norm), which can pin the LM step to a useless direction for a
            // near-circular iterate. Probe rings just across the branch
            // switch, with a few radius anchors since R may have soaked up
            // part of the eccentricity signal, and take the best improving
            // point.
            double best_obj = obj;
            ParamVector best_x = x;
            for (double r_scale : {1.0, 0.9975, 1.0025, 0.995, 1.005}) {
                const double R = r_scale * x.R;
                for (double factor : {2.0, 4.0}) {
                    const double rho = factor * options.e_min * R;
                    for (int spoke = 0; spoke < 16; ++spoke) {
                        const double phi = spoke * (2.0 * M_PI / 16.0);
                        const ParamVector xn{R, rho * std::cos(phi), rho * std::sin(phi)};
                        if (!feasible(xn)) continue;
                        const double objn = sys.objective(xn, scratch);
                        if (objn < best_obj) {
                            best_obj = objn;
                            best_x = xn;
                        }
                    }
                }
            }
            if (best_obj < obj) {
                x = best_x;
                obj = best_obj;
                accepted = true;
                lambda = -1.0;  // damping state is stale after the hop
                step.setZero();
                step(1) = 1.0;  // keep the small-step stop criterion inactive
            }
        }

        if (!accepted) {
            break;  // no feasible improving step remains
        }
        out.residual_history.push_back(obj);
        out.iterate_history.push_back(x);
        out.iterations = iter + 1;
        const double xnorm = std::sqrt(x.R * x.R + x.c1 * x.c1 + x.c2 * x.c2);
        if (obj <= floor_tol ||
            step.lpNorm<Eigen::Infinity>() < options.step_tol * (1.0 + xnorm)) {
            converged = true;
        }
    }

    out.converged = converged;
    out.x = x;
    out.obj = obj;
    return out;
}

}  // namespace

ParamVector initial_guess(std::span<const Vec3> s_plane, std::span<const double> times,
                          const Vec3& w_hat, double mu) {
    if (s_plane.size() != times.size()) {
        throw std::invalid_argument("initial_guess: headings and times differ in length");
    }
    if (s_plane.size() < 2) {
        throw std::invalid_argument("initial_guess: at least 2 observations required");
    }
    const std::vector<double> estimates =
        pairwise_radius_estimates(s_plane, times, w_hat, mu);
    if (estimates.empty()) {
        throw std::invalid_argument("initial_guess: no heading change between observations");
    }
    double sum = 0.0;
    for (double r : estimates) sum += r;
    return ParamVector{sum / static_cast<double>(estimates.size()), 0.0, 0.0};
}

Vec3 regularized_center(const ParamVector& x, double e_min) {
    if (!(x.R > 0.0)) {
        throw std::invalid_argument("regularized_center: R must be positive");
    }
    if (std::hypot(x.c1, x.c2) / x.R > e_min) {
        return Vec3(x.c1, x.c2, 0.0);
    }
    return Vec3::UnitX();
}

double mean_anomaly_g(const ParamVector& x, const Vec3& s_prime, const Vec3& w_hat,
                      double e_min) {
    const double cc = x.c1 * x.c1 + x.c2 * x.c2;
    const double disc = x.R * x.R - cc;
    if (!(disc > 0.0) || !(x.R > 0.0)) {
        throw NonEllipticalError("mean_anomaly_g: parameters describe a non-elliptical orbit");
    }
    const Vec3 d = regularized_center(x, e_min);
    const double E =
        std::atan2(std::sqrt(disc) * w_hat.dot(d.cross(s_prime)), x.R * d.dot(s_prime));
    return E - std::sqrt(cc) / x.R * std::sin(E);
}

double time_of_flight_f(const ParamVector& x, const Vec3& s_i, const Vec3& s_j,
                        const Vec3& w_hat, int k, double mu, double e_min) {
    const double disc = x.R * x.R - x.c1 * x.c1 - x.c2 * x.c2;
    if (!(disc > 0.0)) {
        throw NonEllipticalError("time_of_flight_f: parameters describe a non-elliptical orbit");
    }
    const double n = std::pow(disc, 1.5) / mu;
    return (kTwoPi * k + mean_anomaly_g(x, s_j, w_hat, e_min) -
            mean_anomaly_g(x, s_i, w_hat, e_min)) /
           n;
}

int select_k(const ParamVector& x, const Vec3& s_i, const Vec3& s_j, const Vec3& w_hat,
             double mu, double e_min) {
    return time_of_flight_f(x, s_i, s_j, w_hat, 0, mu, e_min) < 0.0 ? 1 : 0;
}

SolveReport solve(std::span<const HeadingObservation> input, const CentralBody& body,
                  const SolveOptions& options) {
    validate(body);
    if (input.size() < 4) {
        throw std::invalid_argument("solve: at least 4 observations required");
    }
    // Time-order internally; only duplicate timestamps are rejected.
    std::vector<HeadingObservation> observations(input.begin(), input.end());
    std::sort(observations.begin(), observations.end(),
              [](const HeadingObservation& a, const HeadingObservation& b) { return a.t < b.t; });
    for (std::size_t i = 0; i + 1 < observations.size(); ++i) {
        if (!(observations[i + 1].t > observations[i].t)) {
            throw std::invalid_argument("solve: observation times must be strictly increasing");
        }
    }

    SolveReport report;
    const NormalEstimate normal = estimate_normal(observations);
    report.plane_residual = normal.residual;
    report.frame = build_frame(normal.w_hat, observations.front().s);

    PairSystem sys;
    sys.mu = body.mu;
    sys.e_min = options.e_min;
    sys.s.reserve(observations.size());
    std::vector<double> times(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i) {
        sys.s.push_back(to_plane(report.frame, observations[i].s.normalized()));
        times[i] = observations[i].t;
    }
    const int m = static_cast<int>(observations.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            sys.pairs.emplace_back(i, j);
            sys.dt.push_back(times[j] - times[i]);
        }
    }

    // Convergence floor scaled to the data: time residuals cannot resolve
    // below ~1e-14 of the measured spans in double precision.
    double dt_max = 0.0;
    for (double dt : sys.dt) dt_max = std::max(dt_max, dt);
    const double floor_tol = std::max(
        options.objective_tol,
        static_cast<double>(sys.pairs.size()) * (1e-14 * dt_max) * (1e-14 * dt_max));

    const ParamVector x0 = initial_guess(sys.s, times, sys.w_hat, body.mu);
    LmOutcome best = run_lm(sys, x0, options, floor_tol);

    if (!best.converged) {
        // The circular guess occasionally starts the descent in the wrong
        // basin (strongly eccentric or near-circular geometries). Build a
        // deterministic list of alternative starts and keep the best
        // outcome: the per-pair radius estimates bracket the plausible
        // hodograph radii, and for eccentric orbits the heading rate itself
        // betrays the periapsis direction (the heading sweeps fastest there,
        // by the factor (1+e)/(1-e) relative to apoapsis).
        const std::vector<double> estimates =
            pairwise_radius_estimates(sys.s, times, sys.w_hat, body.mu);
        const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());

        // First seed: continue from where the primary run stopped with the
        // damping state discarded (lambda spirals are how LM runs die in
        // flat valleys).
        std::vector<ParamVector> seeds = {best.x, ParamVector{*lo, 0.0, 0.0},
                                          ParamVector{*hi, 0.0, 0.0},
                                          ParamVector{0.5 * (*lo + *hi), 0.0, 0.0}};

        // g depends on (e, periapsis angle) only -- R cancels inside its
        // atan2 -- so f_ij = B_ij(e, phi) / R^3 and the best R for a given
        // shape follows in closed form. Scan a coarse (e, phi) grid with R
        // eliminated and seed from the lowest-objective grid points.
        std::vector<std::pair<double, ParamVector>> grid;
        std::vector<double> B;
        for (int ie = 0; ie <= 18; ++ie) {
            const double ecc = ie / 20.0;
            for (int ip = 0; ip < 24; ++ip) {
                const double phi = ip * (kTwoPi / 24.0);
                const ParamVector unit{1.0, ecc * std::cos(phi), ecc * std::sin(phi)};
                sys.predict(unit, B);  // times at R = 1
                double num = 0.0, den = 0.0;
                for (std::size_t r = 0; r < B.size(); ++r) {
                    num += B[r] * sys.dt[r];
                    den += B[r] * B[r];
                }
                if (!(num > 0.0) || !(den > 0.0)) continue;
                const double u = num / den;  // u = R^-3
                double objg = 0.0;
                for (std::size_t r = 0; r < B.size(); ++r) {
                    const double res = sys.dt[r] - u * B[r];
                    objg += res * res;
                }
                const double R = std::pow(u, -1.0 / 3.0);
                grid.emplace_back(objg, ParamVector{R, ecc * R * std::cos(phi),
                                                    ecc * R * std::sin(phi)});
            }
        }
        std::sort(grid.begin(), grid.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < grid.size() && i < 4; ++i) {
            seeds.push_back(grid[i].second);
        }

        for (const ParamVector& seed : seeds) {
            if (!feasible(seed)) continue;
            const LmOutcome retry = run_lm(sys, seed, options, floor_tol);
            if ((retry.converged && !best.converged) ||
                (retry.converged == best.converged && retry.obj < best.obj)) {
                best = retry;
            }
            if (best.converged && best.obj <= floor_tol) break;
        }
    }

    report.converged = best.converged;
    report.iterations = best.iterations;
    report.residual_history = std::move(best.residual_history);
    report.iterate_history = std::move(best.iterate_history);
    report.x_star = best.x;
    report.hodograph.R = best.x.R;
    report.hodograph.c = from_plane(report.frame, Vec3(best.x.c1, best.x.c2, 0.0));
    report.hodograph.w_hat = normal.w_hat;
    report.elements = hodograph_to_elements(report.hodograph, body, options.e_min);
    return report;
}

}  // namespace hiod
