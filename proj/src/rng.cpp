#include "irsact/rng.hpp"

#include <cmath>
#include <numbers>

namespace irsact {

std::pair<double, double> SplitMix64::normal_pair() noexcept {
    const double u1 = uniform_pos();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

std::complex<double> SplitMix64::complex_normal(double variance) noexcept {
    const auto [re, im] = normal_pair();
    const double s = std::sqrt(0.5 * variance);
    return {s * re, s * im};
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index) noexcept {
    std::uint64_t h = mix64(base ^ 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ tag);
    h = mix64(h ^ index);
    return h;
}

} // namespace irsact
