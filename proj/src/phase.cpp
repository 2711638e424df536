#include "irsact/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsact {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_bits(int bits) {
    if (bits < 1)
        throw std::invalid_argument("quantization bits must be >= 1");
    if (bits > 30)
        throw std::invalid_argument("quantization bits out of supported range");
}

} // namespace

std::vector<double> optimal_phases(const ChannelEstimate& ch) {
    const std::size_t L = ch.elements();
    std::vector<double> out(L);
    for (std::size_t l = 0; l < L; ++l)
        out[l] = wrap_two_pi(ch.phases[0] - ch.phases[l + 1]);
    return out;
}

double quantization_step(int bits) {
    check_bits(bits);
    return two_pi / static_cast<double>(std::uint32_t{1} << bits);
}

std::uint32_t quantize_level(double phase, int bits) {
    check_bits(bits);
    const std::uint32_t K = std::uint32_t{1} << bits;
    const double omega = two_pi / static_cast<double>(K);
    const double s = phase / omega + 0.5;
    const auto level = static_cast<std::uint32_t>(std::floor(s));
    return level % K;
}

std::uint32_t quantize_level_by_region_scan(double phase, int bits) {
    check_bits(bits);
    const std::uint32_t K = std::uint32_t{1} << bits;
    const double omega = two_pi / static_cast<double>(K);
    // Same normalized coordinate as the closed form; the regions become
    // s in [k, k+1) for k >= 1 and s in [0,1) or [K, K+1) for region 0.
    const double s = phase / omega + 0.5;
    for (std::uint32_t k = 0; k < K; ++k) {
        if (k == 0) {
            if (s < 1.0 || s >= static_cast<double>(K))
                return 0;
        } else if (s >= static_cast<double>(k) && s < static_cast<double>(k) + 1.0) {
            return k;
        }
    }
    // Unreachable for phase in [0, 2*pi); keep the scan total.
    return 0;
}

std::vector<double> quantize_phases(std::span<const double> phases, int bits) {
    const double omega = quantization_step(bits);
    std::vector<double> out(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i)
        out[i] = static_cast<double>(quantize_level(phases[i], bits)) * omega;
    return out;
}

std::vector<double> quantize_phases_by_region_scan(std::span<const double> phases, int bits) {
    const double omega = quantization_step(bits);
    std::vector<double> out(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i)
        out[i] = static_cast<double>(quantize_level_by_region_scan(phases[i], bits)) * omega;
    return out;
}

std::vector<double> quantization_errors(std::span<const double> continuous,
                                        std::span<const double> discrete, int bits) {
    if (continuous.size() != discrete.size())
        throw std::invalid_argument("phase array length mismatch");
    check_bits(bits);
    std::vector<double> eps(continuous.size());
    for (std::size_t i = 0; i < continuous.size(); ++i) {
        double raw = discrete[i] - continuous[i];
        if (raw > std::numbers::pi)
            raw -= two_pi;
        else if (raw <= -std::numbers::pi)
            raw += two_pi;
        eps[i] = raw;
    }
    return eps;
}

PhaseShiftConfig make_phase_config(const ChannelEstimate& ch, int bits) {
    PhaseShiftConfig cfg;
    cfg.bits = bits;
    cfg.step = quantization_step(bits);
    cfg.continuous = optimal_phases(ch);
    cfg.discrete = quantize_phases(cfg.continuous, bits);
    cfg.errors = quantization_errors(cfg.continuous, cfg.discrete, bits);
    return cfg;
}

} // namespace irsact
