#pragma once

#include <complex>
#include <cstdint>
#include <utility>

namespace irsact {

/// SplitMix64 generator (Vigna). Counter-based: the state advances by a fixed
/// odd constant and each output is an avalanche mix of the counter, so streams
/// seeded by hashing never correlate through state carry-over.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log argument.
    double uniform_pos() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Pair of independent standard normals via Box-Muller (no rejection, so
    /// the draw count per call is fixed and streams stay reproducible).
    std::pair<double, double> normal_pair() noexcept;

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance) noexcept;

  private:
    std::uint64_t state_;
};

/// Stateless mix of one 64-bit word (the SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic sub-seed for a (base seed, stream tag, index) triple.
/// Pure function of its inputs; callers may derive streams in any order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index) noexcept;

} // namespace irsact
