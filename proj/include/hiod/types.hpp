#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace hiod {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Central body, described by its gravitational parameter mu [km^3/s^2].
struct CentralBody {
    double mu = 0.0;
};

/// Classical orbital elements of an elliptical orbit.
///
/// Angles are radians. For (near-)circular orbits the node and periapsis
/// directions lose meaning; raan/argp are then reported as 0 with the
/// corresponding *_defined flag cleared.
struct OrbitalElements {
    double a = 0.0;     // semi-major axis [km]
    double e = 0.0;     // eccentricity
    double inc = 0.0;   // inclination [rad]
    double raan = 0.0;  // right ascension of ascending node [rad]
    double argp = 0.0;  // argument of periapsis [rad]
    bool raan_defined = true;
    bool argp_defined = true;
};

/// A single heading observation: unit inertial velocity direction at time t.
struct HeadingObservation {
    Vec3 s = Vec3::Zero();  // unit heading
    double t = 0.0;         // observation time [s]
};

/// Thrown when the observation geometry cannot support a solution
/// (e.g. collinear headings give no orbit plane).
struct DegenerateGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when inputs describe a non-elliptical (or otherwise out-of-domain)
/// orbit state.
struct NonEllipticalError : std::domain_error {
    using std::domain_error::domain_error;
};

void validate(const CentralBody& body);
void validate(const OrbitalElements& el);

/// Builds an observation with the heading normalized on ingest.
/// The math is scale-invariant, but storing unit vectors keeps tolerance
/// bookkeeping simple.
HeadingObservation make_observation(const Vec3& s, double t);

}  // namespace hiod
