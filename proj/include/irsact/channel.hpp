#pragma once

#include "irsact/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace irsact {

struct ScenarioGeometry {
    std::array<double, 3> tx_pos{};
    std::array<double, 3> rx_pos{};
    std::array<double, 3> irs_pos{};
    double element_spacing_over_wavelength = 0.5;

    void validate() const;
};

/// Inclination/azimuth of the Tx->IRS arrival and IRS->Rx departure paths.
struct SteeringAngles {
    double inclination_arrival = 0.0;
    double azimuth_arrival = 0.0;
    double inclination_departure = 0.0;
    double azimuth_departure = 0.0;
};

struct FadingParams {
    // reference path losses (dimensionless) and distances (m)
    double pathloss_direct = 1e-5;
    double pathloss_tx_irs = 1e-3;
    double pathloss_irs_rx = 1e-3;
    double ref_distance_direct = 1.0;
    double ref_distance_tx_irs = 1.0;
    double ref_distance_irs_rx = 1.0;
    // path-loss exponents
    double exponent_direct = 3.7;
    double exponent_tx_irs = 2.2;
    double exponent_irs_rx = 2.2;
    // Rician factors, linear scale
    double rician_tx_irs = 1.0;
    double rician_irs_rx = 1.0;
    SteeringAngles angles;

    void validate() const;
};

/// Direction-vector angles in the convention the steering phases expect:
/// inclination measured from the +z axis, azimuth from the +x axis in the
/// xy-plane (wrapped to [0, 2*pi)). Arrival uses the Tx->IRS propagation
/// direction, departure the IRS->Rx one.
SteeringAngles angles_from_geometry(const ScenarioGeometry& geom);

/// One random channel estimate: direct link is zero-mean complex Gaussian
/// with the distance-dependent variance; each cascaded link is the product
/// of Rician Tx->IRS and IRS->Rx coefficients on a uniform linear array.
/// Identical inputs (including seed) give bit-identical output.
ChannelEstimate sample_channel(const ScenarioGeometry& geom, const FadingParams& fading,
                               std::size_t L, const std::vector<double>& betas,
                               std::uint64_t seed);

/// Convenience for the common constant-amplitude case.
ChannelEstimate sample_channel(const ScenarioGeometry& geom, const FadingParams& fading,
                               std::size_t L, double beta, std::uint64_t seed);

/// Built-in reference scenario: Tx (0,0,0), Rx (100,0,0), IRS (50,20,10),
/// half-wavelength spacing.
ScenarioGeometry reference_geometry();

/// Reference fading parameters (path losses, exponents, 5 dB Rician factors)
/// with angles derived from the given geometry.
FadingParams reference_fading(const ScenarioGeometry& geom);

} // namespace irsact
