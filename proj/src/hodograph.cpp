#include "hiod/hodograph.hpp"

#include <cmath>

namespace hiod {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

void validate(const HodographParams& hp) {
    if (!(hp.R > 0.0)) {
        throw std::invalid_argument("hodograph: R must be positive");
    }
    if (hp.c.norm() >= hp.R) {
        throw NonEllipticalError("hodograph: |c| >= R describes a non-elliptical orbit");
    }
    if (std::abs(hp.w_hat.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("hodograph: w_hat must be a unit vector");
    }
    if (std::abs(hp.c.dot(hp.w_hat)) > 1e-12 * std::max(1.0, hp.c.norm())) {
        throw std::invalid_argument("hodograph: c must be perpendicular to w_hat");
    }
}

PerifocalBasis perifocal_basis(const OrbitalElements& el) {
    const double cO = std::cos(el.raan), sO = std::sin(el.raan);
    const double co = std::cos(el.argp), so = std::sin(el.argp);
    const double ci = std::cos(el.inc), si = std::sin(el.inc);
    PerifocalBasis b;
    b.p_hat = Vec3(cO * co - sO * so * ci, sO * co + cO * so * ci, so * si);
    b.q_hat = Vec3(-cO * so - sO * co * ci, -sO * so + cO * co * ci, co * si);
    b.w_hat = Vec3(sO * si, -cO * si, ci);
    return b;
}

HodographParams elements_to_hodograph(const OrbitalElements& el, const CentralBody& body) {
    validate(body);
    validate(el);
    const PerifocalBasis basis = perifocal_basis(el);
    const double h = std::sqrt(body.mu * el.a * (1.0 - el.e * el.e));
    HodographParams hp;
    hp.R = body.mu / h;
    hp.c = hp.R * el.e * basis.q_hat;
    hp.w_hat = basis.w_hat;
    return hp;
}

OrbitalElements hodograph_to_elements(const HodographParams& hp, const CentralBody& body,
                                      double e_circular) {
    validate(body);
    validate(hp);

    OrbitalElements el;
    const double c_norm = hp.c.norm();
    el.e = c_norm / hp.R;
    el.a = body.mu / (hp.R * hp.R - hp.c.squaredNorm());
    el.inc = std::acos(std::clamp(hp.w_hat.z(), -1.0, 1.0));

    // Node vector n = z x w_hat; vanishes for equatorial orbits.
    const Vec3 node(-hp.w_hat.y(), hp.w_hat.x(), 0.0);
    const double node_norm = node.norm();
    const bool has_node = node_norm > 1e-12;

    if (el.e < e_circular) {
        // In-plane orientation is not meaningful; report the convention.
        el.raan = 0.0;
        el.argp = 0.0;
        el.raan_defined = false;
        el.argp_defined = false;
        return el;
    }

    const Vec3 q_hat = hp.c / c_norm;
    const Vec3 p_hat = q_hat.cross(hp.w_hat);
    if (has_node) {
        el.raan = std::atan2(hp.w_hat.x(), -hp.w_hat.y());
        if (el.raan < 0.0) el.raan += kTwoPi;
        const Vec3 n_hat = node / node_norm;
        el.argp = std::atan2(n_hat.cross(p_hat).dot(hp.w_hat), n_hat.dot(p_hat));
        if (el.argp < 0.0) el.argp += kTwoPi;
    } else {
        // Equatorial: no node; measure periapsis from +x so round-trips of
        // raan=0 inputs stay exact.
        el.raan = 0.0;
        el.raan_defined = false;
        el.argp = std::atan2(Vec3::UnitX().cross(p_hat).dot(hp.w_hat), p_hat.x());
        if (el.argp < 0.0) el.argp += kTwoPi;
    }
    return el;
}

Vec3 velocity_at_true_anomaly(const HodographParams& hp, const PerifocalBasis& basis,
                              double theta) {
    return hp.R * (-std::sin(theta) * basis.p_hat + std::cos(theta) * basis.q_hat) + hp.c;
}

double heading_angle(double e, double theta) {
    double beta = std::atan2(std::sin(theta), e + std::cos(theta));
    if (beta < 0.0) beta += kTwoPi;
    return beta;
}

double eccentric_anomaly_from_heading(const HodographParams& hp, const Vec3& s) {
    const double cc = hp.c.squaredNorm();
    if (!(cc > 0.0)) {
        throw NonEllipticalError(
            "eccentric_anomaly_from_heading: |c| = 0; use the d'-regularized "
            "solver variant for near-circular states");
    }
    const double num = std::sqrt(hp.R * hp.R - cc) * hp.w_hat.dot(hp.c.cross(s));
    const double den = hp.R * hp.c.dot(s);
    return std::atan2(num, den);
}

}  // namespace hiod
