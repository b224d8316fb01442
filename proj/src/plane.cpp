#include "hiod/plane.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace hiod {

NormalEstimate estimate_normal(std::span<const HeadingObservation> observations) {
    const auto m = static_cast<Eigen::Index>(observations.size());
    if (m < 2) {
        throw std::invalid_argument("estimate_normal: at least 2 observations required");
    }

    Eigen::MatrixXd S(m, 3);
    for (Eigen::Index i = 0; i < m; ++i) {
        S.row(i) = observations[static_cast<std::size_t>(i)].s.transpose();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma1 = sv(0);
    const double sigma2 = sv(1);
    const double sigma3 = m >= 3 ? sv(2) : 0.0;

    // Collinear headings leave no unique plane: the null space is then
    // (at least) two-dimensional and sigma2 collapses toward sigma3.
    if (sigma2 < 1e-9 * sigma1 || sigma2 < 10.0 * sigma3) {
        throw DegenerateGeometryError(
            "estimate_normal: headings are (near-)collinear, orbit plane is "
            "not determined");
    }

    Vec3 w = svd.matrixV().col(2);

    // Prograde sign: motion advances positively about w_hat. The heading can
    // rotate by more than pi between two observations (the cross product
    // then points the wrong way), but consecutive in-period gaps sum to
    // less than 2*pi, so the pair with the smallest unsigned separation is
    // guaranteed to be less than pi apart; its short-way normal is the
    // direction of motion.
    int best = -1;
    double best_dot = -2.0;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        const auto& a = observations[static_cast<std::size_t>(i)].s;
        const auto& b = observations[static_cast<std::size_t>(i) + 1].s;
        const double d = a.dot(b);
        if (a.cross(b).norm() > 1e-12 && d > best_dot) {
            best_dot = d;
            best = static_cast<int>(i);
        }
    }
    if (best >= 0) {
        const Vec3 cross = observations[static_cast<std::size_t>(best)].s.cross(
            observations[static_cast<std::size_t>(best) + 1].s);
        if (w.dot(cross) < 0.0) w = -w;
    }

    NormalEstimate est;
    est.w_hat = w;
    est.residual = (S * w).cwiseAbs().maxCoeff();
    return est;
}

PlaneFrame build_frame(const Vec3& w_hat, const Vec3& s_ref) {
    const Vec3 cross = s_ref.cross(w_hat);
    const double norm = cross.norm();
    if (norm < 1e-9) {
        throw DegenerateGeometryError(
            "build_frame: reference heading is parallel to the plane normal");
    }
    PlaneFrame frame;
    frame.b_hat = cross / norm;
    frame.w_hat = w_hat;
    frame.a_hat = frame.b_hat.cross(w_hat);
    frame.T.row(0) = frame.a_hat.transpose();
    frame.T.row(1) = frame.b_hat.transpose();
    frame.T.row(2) = frame.w_hat.transpose();
    return frame;
}

}  // namespace hiod
