#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace beamtrain {

// splitmix64 finalizer, used to whiten seed material before it reaches an
// engine and to derive per-stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Folds one word into a seed. Chaining mix_seed calls with purpose tags and
// indices yields independent, reproducible stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) {
    return splitmix64(seed ^ splitmix64(word));
}

// Deterministic random source for channel and noise draws.
//
// The Gaussian path is a fixed Box-Muller transform instead of
// std::normal_distribution, whose output is implementation-defined; results
// must be bit-reproducible for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal; consumes exactly two uniforms per draw.
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_gaussian(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

  private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace beamtrain
