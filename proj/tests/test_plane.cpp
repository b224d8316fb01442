#include "hiod/plane.hpp"

#include "hiod/simulate.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace hiod;
using namespace fixture;

namespace {

std::vector<HeadingObservation> tableObservations() {
    std::vector<HeadingObservation> obs;
    for (std::size_t i = 0; i < kHeadings.size(); ++i) {
        obs.push_back(make_observation(kHeadings[i], kTimeMin[i] * 60.0));
    }
    return obs;
}

}  // namespace

TEST_CASE("estimate_normal recovers the orbit normal from the published headings") {
    const auto obs = tableObservations();
    const NormalEstimate est = estimate_normal(obs);

    // Oracle: w from the elements directly, (sin i sin O, -sin i cos O, cos i).
    const Vec3 w_oracle(std::sin(65.0 * kDeg) * std::sin(70.0 * kDeg),
                        -std::sin(65.0 * kDeg) * std::cos(70.0 * kDeg), std::cos(65.0 * kDeg));
    const double mismatch =
        std::min((est.w_hat - w_oracle).norm(), (est.w_hat + w_oracle).norm());
    CHECK(mismatch < 1e-3);  // published headings carry 4-decimal rounding

    for (const auto& o : obs) {
        CHECK(std::abs(o.s.dot(est.w_hat)) < 1e-4);
    }
    CHECK(est.residual < 1e-4);

    // Prograde sign convention.
    CHECK(est.w_hat.dot(obs[0].s.cross(obs[1].s)) > 0.0);
}

TEST_CASE("estimate_normal of two perpendicular headings is their cross product") {
    std::vector<HeadingObservation> obs = {make_observation(Vec3::UnitX(), 0.0),
                                           make_observation(Vec3::UnitY(), 10.0)};
    const NormalEstimate est = estimate_normal(obs);
    CHECK(est.w_hat.isApprox(Vec3::UnitZ(), 1e-12));
    CHECK(est.residual < 1e-14);
}

TEST_CASE("estimate_normal rejects degenerate geometry") {
    std::vector<HeadingObservation> collinear = {
        make_observation(Vec3(0.5, 0.5, std::sqrt(0.5)), 0.0),
        make_observation(Vec3(0.5, 0.5, std::sqrt(0.5)) * 1.0, 10.0),
        make_observation(Vec3(0.5, 0.5, std::sqrt(0.5)), 20.0)};
    CHECK_THROWS_AS(estimate_normal(collinear), DegenerateGeometryError);

    std::vector<HeadingObservation> one = {make_observation(Vec3::UnitX(), 0.0)};
    CHECK_THROWS_AS(estimate_normal(one), std::invalid_argument);
}

TEST_CASE("estimate_normal degrades gracefully under 0.1 deg noise") {
    const auto obs = observationsAt(lloElements(), kMoon,
                                    {kTrueAnomalyDeg.begin(), kTrueAnomalyDeg.end()});
    const Vec3 w_true = elements_to_hodograph(lloElements(), kMoon).w_hat;

    Rng rng(314159);
    std::vector<double> err_deg;
    for (int k = 0; k < 1000; ++k) {
        std::vector<HeadingObservation> noisy = obs;
        for (std::size_t i = 0; i < noisy.size(); ++i) {
            Rng stream = rng.substream(static_cast<std::uint64_t>(k) * 16 + i);
            noisy[i].s = perturb_heading(noisy[i].s, 0.1, stream);
        }
        const NormalEstimate est = estimate_normal(noisy);
        const Vec3 w = est.w_hat.dot(w_true) >= 0.0 ? est.w_hat : Vec3(-est.w_hat);
        err_deg.push_back(angleBetweenDeg(w, w_true));
    }
    std::sort(err_deg.begin(), err_deg.end());
    // Two-axis tilt noise: typical error stays near the noise scale; the
    // 90th percentile sits below twice of it.
    CHECK(err_deg[err_deg.size() / 2] < 0.15);
    CHECK(err_deg[static_cast<std::size_t>(err_deg.size() * 0.9)] < 0.2);
}

TEST_CASE("estimate_normal is permutation and scale invariant up to sign") {
    const auto obs = tableObservations();
    const Vec3 w_ref = estimate_normal(obs).w_hat;

    std::vector<HeadingObservation> shuffled = {obs[2], obs[0], obs[3], obs[1]};
    const Vec3 w_perm = estimate_normal(shuffled).w_hat;
    CHECK(std::min((w_perm - w_ref).norm(), (w_perm + w_ref).norm()) < 1e-14);

    std::vector<HeadingObservation> scaled = obs;
    scaled[1] = make_observation(7.5 * obs[1].s, obs[1].t);
    const Vec3 w_scaled = estimate_normal(scaled).w_hat;
    CHECK(std::min((w_scaled - w_ref).norm(), (w_scaled + w_ref).norm()) < 1e-12);
}

TEST_CASE("extra noise-free observations do not worsen the plane residual") {
    std::vector<double> four = {5.0, 70.0, 140.0, 235.0};
    std::vector<double> ten;
    for (int i = 0; i < 10; ++i) ten.push_back(15.0 + 35.0 * i);
    const auto obs4 = observationsAt(lloElements(), kMoon, four);
    const auto obs10 = observationsAt(lloElements(), kMoon, ten);
    const double r4 = estimate_normal(obs4).residual;
    const double r10 = estimate_normal(obs10).residual;
    CHECK(r4 < 1e-13);
    CHECK(r10 < 1e-13);
    CHECK(r10 <= r4 + 1e-15);
}

TEST_CASE("build_frame reproduces the published intermediate basis") {
    const auto obs = tableObservations();
    const NormalEstimate est = estimate_normal(obs);
    const PlaneFrame frame = build_frame(est.w_hat, obs[0].s);
    for (int i = 0; i < 3; ++i) {
        CHECK(frame.a_hat(i) == approx(kRefAHat(i)).margin(1e-3));
        CHECK(frame.b_hat(i) == approx(kRefBHat(i)).margin(1e-3));
    }
}

TEST_CASE("build_frame geometry: a_hat = -s_ref for unit in-plane s_ref") {
    // (s x w) x w = -s whenever s is a unit vector perpendicular to w.
    const PlaneFrame frame = build_frame(Vec3::UnitZ(), Vec3::UnitY());
    CHECK(frame.b_hat.isApprox(Vec3::UnitX(), 1e-15));
    CHECK(frame.a_hat.isApprox(-Vec3::UnitY(), 1e-15));
    CHECK(frame.T.determinant() == approx(1.0).margin(1e-12));
}

TEST_CASE("build_frame rejects a reference heading along the normal") {
    CHECK_THROWS_AS(build_frame(Vec3::UnitZ(), Vec3(0.0, 0.0, 5.0)),
                    DegenerateGeometryError);
}

TEST_CASE("frame rotation is orthonormal and round-trips") {
    const auto obs = tableObservations();
    const PlaneFrame frame = build_frame(estimate_normal(obs).w_hat, obs[0].s);
    CHECK((frame.T * frame.T.transpose() - Mat3::Identity()).norm() < 1e-12);
    CHECK(frame.T.determinant() == approx(1.0).margin(1e-12));

    Rng rng(8);
    for (int k = 0; k < 200; ++k) {
        const Vec3 v(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
        CHECK((from_plane(frame, to_plane(frame, v)) - v).norm() < 1e-14);
        CHECK((to_plane(frame, from_plane(frame, v)) - v).norm() < 1e-14);
    }
}

TEST_CASE("to_plane sends the reference heading to -x") {
    const auto obs = tableObservations();
    const PlaneFrame frame = build_frame(estimate_normal(obs).w_hat, obs[0].s);
    const Vec3 s1p = to_plane(frame, obs[0].s);
    // x = -sqrt(1 - (s1.w)^2): the published headings carry 4-decimal
    // rounding, so s1 has an out-of-plane part of order 1e-4.
    CHECK(s1p.x() == approx(-1.0).margin(1e-8));
    CHECK(s1p.y() == approx(0.0).margin(1e-12));
    CHECK(s1p.z() == approx(0.0).margin(1e-4));
}

TEST_CASE("to_plane with the identity frame is the identity") {
    const PlaneFrame frame;
    const Vec3 v(0.3, -0.4, 0.8);
    CHECK(to_plane(frame, v).isApprox(v, 1e-15));
}

TEST_CASE("published hodograph center maps to the published in-plane coordinates") {
    const auto obs = tableObservations();
    const PlaneFrame frame = build_frame(estimate_normal(obs).w_hat, obs[0].s);

    const Vec3 c_prime = to_plane(frame, kRefCenter);
    CHECK(c_prime.x() == approx(kRefC1).margin(1e-3));
    CHECK(c_prime.y() == approx(kRefC2).margin(1e-3));
    CHECK(std::abs(c_prime.z()) < 1e-3);

    const Vec3 c_back = from_plane(frame, Vec3(kRefC1, kRefC2, 0.0));
    for (int i = 0; i < 3; ++i) {
        CHECK(c_back(i) == approx(kRefCenter(i)).margin(1e-3));
    }
    CHECK(from_plane(frame, Vec3::Zero()).isApprox(Vec3::Zero(), 1e-15));
}

TEST_CASE("noise-free in-plane headings have negligible third component") {
    const auto obs = observationsAt(lloElements(), kMoon, {10.0, 80.0, 200.0, 300.0});
    const PlaneFrame frame = build_frame(estimate_normal(obs).w_hat, obs[0].s);
    for (const auto& o : obs) {
        CHECK(std::abs(to_plane(frame, o.s).z()) < 1e-10);
    }
}
