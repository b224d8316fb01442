#include "hiod/simulate.hpp"

#include "hiod/hodograph.hpp"
#include "hiod/kepler.hpp"

#include <cmath>

namespace hiod {

void validate(const Scenario& sc) {
    validate(sc.body);
    validate(sc.elements);
    if (sc.true_anomalies_deg.empty() == sc.times_s.empty()) {
        throw std::invalid_argument(
            "scenario: exactly one of true_anomalies_deg / times_s must be given");
    }
    if (!(sc.noise_sigma_deg >= 0.0)) {
        throw std::invalid_argument("scenario: noise_sigma_deg must be >= 0");
    }
    const auto& seq = sc.times_s.empty() ? sc.true_anomalies_deg : sc.times_s;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!(seq[i + 1] > seq[i])) {
            throw std::invalid_argument("scenario: sample points must be strictly increasing");
        }
    }
}

Vec3 perturb_heading(const Vec3& s, double sigma_deg, Rng& rng) {
    if (sigma_deg == 0.0) {
        return s;
    }
    // Orthonormal pair spanning the tangent plane at s.
    const Vec3 helper = std::abs(s.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 u = s.cross(helper).normalized();
    const Vec3 v = s.cross(u);

    const double n1 = rng.normal();
    const double n2 = rng.normal();
    const double sigma = sigma_deg * M_PI / 180.0;
    const double angle = sigma * std::hypot(n1, n2);
    const double azimuth = std::atan2(n2, n1);
    const Vec3 axis = std::cos(azimuth) * u + std::sin(azimuth) * v;
    // Rodrigues rotation about an axis perpendicular to s.
    const Vec3 out = std::cos(angle) * s + std::sin(angle) * axis.cross(s);
    return out.normalized();
}

std::vector<HeadingObservation> generate_observations(const Scenario& sc) {
    validate(sc);

    const HodographParams hp = elements_to_hodograph(sc.elements, sc.body);
    const PerifocalBasis basis = perifocal_basis(sc.elements);
    const double n = mean_motion(hp, sc.body);

    std::vector<HeadingObservation> out;
    const Rng root(sc.seed);

    if (!sc.true_anomalies_deg.empty()) {
        out.reserve(sc.true_anomalies_deg.size());
        for (std::size_t i = 0; i < sc.true_anomalies_deg.size(); ++i) {
            const double theta = sc.true_anomalies_deg[i] * M_PI / 180.0;
            const AnomalySet an = anomalies_from_true(theta, sc.elements.e);
            const Vec3 s = velocity_at_true_anomaly(hp, basis, theta).normalized();
            Rng stream = root.substream(i);
            out.push_back({perturb_heading(s, sc.noise_sigma_deg, stream), an.M / n});
        }
    } else {
        out.reserve(sc.times_s.size());
        for (std::size_t i = 0; i < sc.times_s.size(); ++i) {
            const Vec3 s = propagate_heading(sc.elements, sc.body, sc.times_s[i]);
            Rng stream = root.substream(i);
            out.push_back({perturb_heading(s, sc.noise_sigma_deg, stream), sc.times_s[i]});
        }
    }
    return out;
}

}  // namespace hiod
