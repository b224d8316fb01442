#include "hiod/kepler.hpp"

#include <cmath>

namespace hiod {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Shift `angle` by whole turns so it lands in the same revolution as `ref`.
double unwrap_to(double angle, double ref) {
    return angle + kTwoPi * std::round((ref - angle) / kTwoPi);
}

}  // namespace

double mean_motion(const HodographParams& hp, const CentralBody& body) {
    validate(body);
    const double disc = hp.R * hp.R - hp.c.squaredNorm();
    if (!(disc > 0.0)) {
        throw NonEllipticalError("mean_motion: R^2 - c.c must be positive");
    }
    return std::pow(disc, 1.5) / body.mu;
}

double mean_from_eccentric(double E, double e) {
    return E - e * std::sin(E);
}

double eccentric_from_mean(double M, double e) {
    if (e < 0.0 || e >= 0.999) {
        throw std::invalid_argument("eccentric_from_mean: e must lie in [0, 0.999)");
    }
    // Work in the principal revolution, restore afterwards.
    const double turns = std::floor(M / kTwoPi);
    const double M0 = M - turns * kTwoPi;

    double E = M0;
    double lo = M0 - e, hi = M0 + e;  // M = E - e sinE brackets E within +-e of M
    for (int iter = 0; iter < 50; ++iter) {
        const double fval = E - e * std::sin(E) - M0;
        if (std::abs(fval) < 1e-14) {
            return E + turns * kTwoPi;
        }
        if (fval > 0.0) {
            hi = std::min(hi, E);
        } else {
            lo = std::max(lo, E);
        }
        const double fprime = 1.0 - e * std::cos(E);
        double En = E - fval / fprime;
        if (!(En > lo && En < hi)) {
            En = 0.5 * (lo + hi);  // Newton left the bracket: bisect
        }
        if (std::abs(En - E) < 1e-13) {
            return En + turns * kTwoPi;
        }
        E = En;
    }
    throw std::runtime_error("eccentric_from_mean: no convergence after 50 iterations");
}

double true_from_eccentric(double E, double e) {
    const double theta = std::atan2(std::sqrt(1.0 - e * e) * std::sin(E), std::cos(E) - e);
    return unwrap_to(theta, E);
}

double eccentric_from_true(double theta, double e) {
    const double E = std::atan2(std::sqrt(1.0 - e * e) * std::sin(theta), e + std::cos(theta));
    return unwrap_to(E, theta);
}

AnomalySet anomalies_from_true(double theta, double e) {
    AnomalySet a;
    a.theta = theta;
    a.E = eccentric_from_true(theta, e);
    a.M = mean_from_eccentric(a.E, e);
    return a;
}

Vec3 propagate_heading(const OrbitalElements& el, const CentralBody& body,
                       double t_since_periapsis) {
    const HodographParams hp = elements_to_hodograph(el, body);
    const PerifocalBasis basis = perifocal_basis(el);
    const double n = mean_motion(hp, body);
    const double E = eccentric_from_mean(n * t_since_periapsis, el.e);
    const double theta = true_from_eccentric(E, el.e);
    const Vec3 v = velocity_at_true_anomaly(hp, basis, theta);
    return v.normalized();
}

}  // namespace hiod
