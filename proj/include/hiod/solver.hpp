#pragma once

#include "hiod/hodograph.hpp"
#include "hiod/plane.hpp"
#include "hiod/types.hpp"

#include <span>
#include <vector>

namespace hiod {

/// The iterated parameter vector x = [R, c'_1, c'_2]: hodograph radius and
/// the in-plane coordinates of the hodograph center.
struct ParamVector {
    double R = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

struct SolveOptions {
    double e_min = 1e-3;        // circular threshold for the d' regularization
    int max_iterations = 100;   // outer Levenberg-Marquardt iterations
    double step_tol = 1e-12;    // stop when |dx|_inf < step_tol * (1 + |x|)
    double objective_tol = 1e-20;  // stop when the objective [s^2] drops below
};

struct SolveReport {
    ParamVector x_star;
    HodographParams hodograph;
    OrbitalElements elements;
    PlaneFrame frame;
    int iterations = 0;
    bool converged = false;
    double plane_residual = 0.0;
    /// Sum of squared time-of-flight residuals [s^2] at each iterate;
    /// entry 0 is the initial guess.
    std::vector<double> residual_history;
    /// Iterate history aligned with residual_history.
    std::vector<ParamVector> iterate_history;
};

/// Circular-orbit initial guess [R0, 0, 0]. R0 is the arithmetic mean over
/// all C(m,2) pairs of [mu (beta_j - beta_i)/(t_j - t_i)]^(1/3), with each
/// heading change taken from atan2(w.(s_i x s_j), s_i.s_j) wrapped to
/// [0, 2*pi).
ParamVector initial_guess(std::span<const Vec3> s_plane, std::span<const double> times,
                          const Vec3& w_hat, double mu);

/// The regularized center direction d': equal to c' when |c'|/R > e_min,
/// otherwise the fixed reference [1, 0, 0].
Vec3 regularized_center(const ParamVector& x, double e_min);

/// Mean anomaly of a heading under the current parameters:
/// E from the d'-regularized atan2, then M = E - (|c'|/R) sin E.
double mean_anomaly_g(const ParamVector& x, const Vec3& s_prime, const Vec3& w_hat,
                      double e_min = 1e-3);

/// Predicted time of flight between two headings:
///   f = mu (R^2 - c'.c')^(-3/2) [2 pi k + g(x, s_j) - g(x, s_i)]
double time_of_flight_f(const ParamVector& x, const Vec3& s_i, const Vec3& s_j,
                        const Vec3& w_hat, int k, double mu, double e_min = 1e-3);

/// Periapsis-passage count for a pair within one orbital period: k = 0, or
/// k = 1 when the k = 0 time of flight comes out negative.
int select_k(const ParamVector& x, const Vec3& s_i, const Vec3& s_j, const Vec3& w_hat,
             double mu, double e_min = 1e-3);

/// Full heading-only IOD: plane estimation, circular initial guess, and
/// Levenberg-Marquardt on x = [R, c'_1, c'_2] minimizing the sum of squared
/// time-of-flight residuals over all observation pairs. Requires >= 4
/// observations with distinct timestamps spanning less than one period;
/// the list is time-ordered internally. If the first descent fails, a fixed
/// list of alternative starts is tried (max_iterations bounds each run).
SolveReport solve(std::span<const HeadingObservation> observations, const CentralBody& body,
                  const SolveOptions& options = {});

}  // namespace hiod
