#pragma once

#include "hiod/types.hpp"

#include <span>

namespace hiod {

/// Intermediate in-plane basis {a_hat, b_hat, w_hat} and the rotation T
/// (rows a^T, b^T, w^T) taking inertial vectors to in-plane coordinates.
struct PlaneFrame {
    Vec3 a_hat = Vec3::UnitX();
    Vec3 b_hat = Vec3::UnitY();
    Vec3 w_hat = Vec3::UnitZ();
    Mat3 T = Mat3::Identity();
};

struct NormalEstimate {
    Vec3 w_hat = Vec3::UnitZ();
    double residual = 0.0;  // max_i |s_i . w_hat|
};

/// Orbit-normal direction as the least-squares null vector of the stacked
/// heading rows (via SVD). The sign is fixed so motion is prograde about
/// w_hat: w.(s_i x s_j) > 0 for the first non-degenerate time-ordered pair.
/// Throws DegenerateGeometryError when the headings are (near-)collinear
/// (second/third singular value ratio below 10).
NormalEstimate estimate_normal(std::span<const HeadingObservation> observations);

/// In-plane frame from the normal and a reference heading:
///   b_hat = s_ref x w_hat / |s_ref x w_hat|,  a_hat = b_hat x w_hat.
/// Throws when s_ref is (near-)parallel to w_hat.
PlaneFrame build_frame(const Vec3& w_hat, const Vec3& s_ref);

inline Vec3 to_plane(const PlaneFrame& frame, const Vec3& v) { return frame.T * v; }
inline Vec3 from_plane(const PlaneFrame& frame, const Vec3& v_prime) {
    return frame.T.transpose() * v_prime;
}

}  // namespace hiod
