#pragma once

#include "hiod/types.hpp"

namespace hiod {

/// Parameters of the orbital hodograph: the circle of radius R [km/s]
/// centered at c [km/s] traced by the velocity vector of a Keplerian orbit,
/// lying in the plane normal to w_hat.
struct HodographParams {
    double R = 0.0;
    Vec3 c = Vec3::Zero();
    Vec3 w_hat = Vec3::UnitZ();
};

/// Right-handed orthonormal perifocal triad: p_hat toward periapsis,
/// w_hat along the angular momentum, q_hat = w_hat x p_hat.
struct PerifocalBasis {
    Vec3 p_hat = Vec3::UnitX();
    Vec3 q_hat = Vec3::UnitY();
    Vec3 w_hat = Vec3::UnitZ();
};

void validate(const HodographParams& hp);

/// Perifocal triad from the orientation angles (inc, raan, argp).
PerifocalBasis perifocal_basis(const OrbitalElements& el);

/// Hodograph parameters from classical elements: R = mu/h, c = R e q_hat.
/// Rejects non-elliptical input (e >= 1).
HodographParams elements_to_hodograph(const OrbitalElements& el, const CentralBody& body);

/// Inverse mapping: h = mu/R, e = |c|/R, a = mu/(R^2 - c.c); orientation from
/// w_hat and q_hat = c/|c|. Below `e_circular` the in-plane orientation is
/// meaningless: raan/argp come back 0 with their defined-flags cleared.
/// Throws NonEllipticalError when |c| >= R.
OrbitalElements hodograph_to_elements(const HodographParams& hp, const CentralBody& body,
                                      double e_circular = 1e-3);

/// Velocity on the hodograph at true anomaly theta:
///   v = R [(-sin theta) p_hat + cos theta q_hat] + c
Vec3 velocity_at_true_anomaly(const HodographParams& hp, const PerifocalBasis& basis,
                              double theta);

/// Heading angle beta (angle from q_hat to the velocity, positive along the
/// motion): tan beta = sin theta / (e + cos theta). Quadrant-resolved,
/// wrapped to [0, 2*pi).
double heading_angle(double e, double theta);

/// Quadrant-discriminating eccentric anomaly from a heading vector:
///   E = atan2( sqrt(R^2 - c.c) * w_hat.(c x s),  R * c.s ),  E in (-pi, pi].
/// Invariant under positive rescaling of s. Requires |c|/R above the circular
/// threshold; for near-circular states use the solver's regularized variant.
double eccentric_anomaly_from_heading(const HodographParams& hp, const Vec3& s);

}  // namespace hiod
