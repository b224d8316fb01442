#include "hiod/types.hpp"

#include <cmath>

namespace hiod {

void validate(const CentralBody& body) {
    if (!(body.mu > 0.0)) {
        throw std::invalid_argument("central body: mu must be positive, got " +
                                    std::to_string(body.mu));
    }
}

void validate(const OrbitalElements& el) {
    if (!(el.a > 0.0)) {
        throw std::invalid_argument("elements: semi-major axis must be positive");
    }
    if (!(el.e >= 0.0) || el.e >= 1.0) {
        throw NonEllipticalError("elements: eccentricity " + std::to_string(el.e) +
                                 " outside the elliptical range [0, 1)");
    }
    if (el.inc < 0.0 || el.inc > M_PI) {
        throw std::invalid_argument("elements: inclination must lie in [0, pi]");
    }
}

HeadingObservation make_observation(const Vec3& s, double t) {
    const double norm = s.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("observation: heading must be a nonzero finite vector");
    }
    return HeadingObservation{s / norm, t};
}

}  // namespace hiod
