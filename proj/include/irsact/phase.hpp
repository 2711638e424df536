#pragma once

#include "irsact/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace irsact {

/// Continuous phases, their b-bit quantization, and the per-element
/// quantization errors in (-omega/2, omega/2].
struct PhaseShiftConfig {
    std::vector<double> continuous;
    std::vector<double> discrete;
    std::vector<double> errors;
    int bits = 0;
    double step = 0.0; // omega = 2*pi / 2^bits
};

/// Phase shifts aligning every cascaded term with the direct link:
/// (theta_0 - theta_l) mod 2*pi.
std::vector<double> optimal_phases(const ChannelEstimate& ch);

/// Grid step omega = 2*pi / 2^bits.
double quantization_step(int bits);

/// Quantization level by the closed-form rule: floor(phase/omega + 1/2) mod K.
/// O(1) per element regardless of the number of levels.
std::uint32_t quantize_level(double phase, int bits);

/// Quantization level by scanning all K half-open decision regions
/// [k*omega - omega/2, k*omega + omega/2) (region 0 wraps). O(2^b) per
/// element; kept as the reference the closed form is checked against.
/// Both routines branch on the same computed value phase/omega + 1/2, so
/// region-boundary floats resolve identically with no epsilon snapping.
std::uint32_t quantize_level_by_region_scan(double phase, int bits);

std::vector<double> quantize_phases(std::span<const double> phases, int bits);
std::vector<double> quantize_phases_by_region_scan(std::span<const double> phases, int bits);

/// Wrap-resolved differences discrete - continuous, each in (-omega/2, omega/2].
std::vector<double> quantization_errors(std::span<const double> continuous,
                                        std::span<const double> discrete, int bits);

/// Continuous + quantized phases and errors for one channel estimate.
PhaseShiftConfig make_phase_config(const ChannelEstimate& ch, int bits);

} // namespace irsact
