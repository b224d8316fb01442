#pragma once

#include "hiod/rng.hpp"
#include "hiod/types.hpp"

#include <cstdint>
#include <vector>

namespace hiod {

/// Synthetic observation scenario: a truth orbit sampled either at true
/// anomalies or at times from periapsis, with optional angular noise.
/// Exactly one of the two sample lists may be non-empty.
struct Scenario {
    OrbitalElements elements;
    CentralBody body;
    std::vector<double> true_anomalies_deg;
    std::vector<double> times_s;
    double noise_sigma_deg = 0.0;
    std::uint64_t seed = 0;
};

void validate(const Scenario& sc);

/// Noise model: the heading is tilted away from truth by independent
/// N(0, sigma) components along two perpendicular tangent axes, i.e. the
/// tilt angle is sigma * Rayleigh(1) (mean sigma * sqrt(pi/2), RMS
/// sigma * sqrt(2)) about a uniformly distributed perpendicular axis.
/// The result is exactly unit-norm. sigma = 0 returns s unchanged.
Vec3 perturb_heading(const Vec3& s, double sigma_deg, Rng& rng);

/// Heading observations for the scenario. Noise-free headings equal the
/// Kepler truth model; each observation i perturbs with the substream
/// (scenario seed, i). Deterministic given the scenario, bitwise.
std::vector<HeadingObservation> generate_observations(const Scenario& sc);

}  // namespace hiod
