#pragma once

#include "hiod/hodograph.hpp"
#include "hiod/types.hpp"

namespace hiod {

/// Mutually consistent anomaly triple for one orbit position.
struct AnomalySet {
    double theta = 0.0;  // true anomaly [rad]
    double E = 0.0;      // eccentric anomaly [rad]
    double M = 0.0;      // mean anomaly [rad]
};

/// Mean motion from hodograph parameters: n = (R^2 - c.c)^(3/2) / mu.
/// Equals sqrt(mu/a^3) for the corresponding ellipse.
double mean_motion(const HodographParams& hp, const CentralBody& body);

/// Kepler's equation, M = E - e sin E.
///
/// Note: some published descriptions of this method print the relation with
/// a "+" sign; their own worked examples are only consistent with the minus
/// sign, so the standard form is used here.
double mean_from_eccentric(double E, double e);

/// Inverse Kepler solver. Newton iteration from E0 = M with a bisection
/// fallback; |mean_from_eccentric(E) - M| < 1e-13 on return.
double eccentric_from_mean(double M, double e);

/// theta from E via atan2(sqrt(1-e^2) sin E, cos E - e), unwrapped to the
/// same revolution as E.
double true_from_eccentric(double E, double e);

/// E from theta via atan2(sqrt(1-e^2) sin theta, e + cos theta), unwrapped to
/// the same revolution as theta.
double eccentric_from_true(double theta, double e);

/// All three anomalies from the true anomaly.
AnomalySet anomalies_from_true(double theta, double e);

/// Truth-model oracle: unit heading of the orbit at a given time from
/// periapsis passage, composed from the inverse Kepler solver and the
/// hodograph velocity.
Vec3 propagate_heading(const OrbitalElements& el, const CentralBody& body,
                       double t_since_periapsis);

}  // namespace hiod
