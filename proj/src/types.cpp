#include "irsact/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace irsact {

std::size_t active_count(const ActivationVector& x) noexcept {
    std::size_t m = 0;
    for (auto b : x)
        m += (b != 0);
    return m;
}

double wrap_two_pi(double angle) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(angle, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi)
        r = 0.0;
    return r;
}

ChannelEstimate ChannelEstimate::from_coeffs(std::vector<std::complex<double>> h) {
    if (h.size() < 2)
        throw std::invalid_argument("channel estimate needs a direct link and L >= 1 elements");
    ChannelEstimate ch;
    ch.coeffs = std::move(h);
    ch.magnitudes.reserve(ch.coeffs.size());
    ch.phases.reserve(ch.coeffs.size());
    for (const auto& c : ch.coeffs) {
        ch.magnitudes.push_back(std::abs(c));
        ch.phases.push_back(wrap_two_pi(std::arg(c)));
    }
    ch.alpha_min = *std::min_element(ch.magnitudes.begin(), ch.magnitudes.end());
    return ch;
}

ChannelEstimate ChannelEstimate::from_polar(std::vector<double> magnitudes,
                                            std::vector<double> phases) {
    if (magnitudes.size() != phases.size())
        throw std::invalid_argument("magnitude/phase length mismatch");
    if (magnitudes.size() < 2)
        throw std::invalid_argument("channel estimate needs a direct link and L >= 1 elements");
    ChannelEstimate ch;
    ch.magnitudes = std::move(magnitudes);
    ch.phases = std::move(phases);
    ch.coeffs.reserve(ch.magnitudes.size());
    for (std::size_t i = 0; i < ch.magnitudes.size(); ++i) {
        if (ch.magnitudes[i] < 0.0)
            throw std::invalid_argument("negative channel magnitude");
        ch.phases[i] = wrap_two_pi(ch.phases[i]);
        ch.coeffs.push_back(std::polar(ch.magnitudes[i], ch.phases[i]));
    }
    ch.alpha_min = *std::min_element(ch.magnitudes.begin(), ch.magnitudes.end());
    return ch;
}

void UncertaintySpec::validate(const ChannelEstimate& ch) const {
    if (delta < 0.0)
        throw std::invalid_argument("uncertainty radius must be nonnegative");
    if (delta > ch.alpha_min)
        throw assumption_error("uncertainty radius exceeds the minimum estimated magnitude");
}

void PowerModel::validate() const {
    if (transmit_power_w <= 0.0)
        throw std::invalid_argument("transmit power must be positive");
    if (amplifier_efficiency <= 0.0 || amplifier_efficiency > 1.0)
        throw std::invalid_argument("amplifier efficiency must be in (0, 1]");
    if (static_power_w <= 0.0)
        throw std::invalid_argument("static power must be positive");
    if (off_power_w <= 0.0 || on_power_w < off_power_w)
        throw std::invalid_argument("element powers must satisfy 0 < off <= on");
}

PhaseMode PhaseMode::discrete(int bits) {
    if (bits < 1)
        throw std::invalid_argument("quantization bits must be >= 1");
    return {true, bits};
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double dbm_to_watt(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

} // namespace irsact
