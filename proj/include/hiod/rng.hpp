#pragma once

#include <cstdint>
#include <random>

namespace hiod {

/// Seedable deterministic generator with named substreams.
///
/// Engine: std::mt19937_64 (bit-exact output sequence mandated by the
/// standard). Substreams are derived by splitmix64-style mixing of the parent
/// seed with the substream index, so `Rng(seed).substream(i)` is a documented,
/// platform-independent stream-splitting rule: workers that own disjoint
/// substreams reproduce the sequential results exactly.
///
/// Gaussians use Box-Muller on the engine's 53-bit uniforms rather than
/// std::normal_distribution, whose output sequence is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    /// Independent stream identified by (this stream's seed, index).
    Rng substream(std::uint64_t index) const {
        return Rng(mix(seed_ ^ ((index + 1) * 0x9e3779b97f4a7c15ULL)));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller, pair cached).
    double normal();

private:
    static std::uint64_t mix(std::uint64_t z);

    std::uint64_t seed_ = 0;
    std::mt19937_64 engine_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace hiod
