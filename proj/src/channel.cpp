#include "irsact/channel.hpp"

#include "irsact/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsact {

namespace {

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double path_loss(double ref_loss, double dist, double ref_dist, double exponent) {
    return ref_loss * std::pow(dist / ref_dist, -exponent);
}

/// Rician mixture of a unit-modulus LOS steering term and a CN(0,1) NLOS
/// draw, scaled to average power rho.
std::complex<double> rician_coefficient(double rho, double kappa, double steering_phase,
                                        SplitMix64& gen) {
    const double los_w = std::sqrt(kappa / (1.0 + kappa));
    const double nlos_w = std::sqrt(1.0 / (1.0 + kappa));
    const std::complex<double> los = std::exp(std::complex<double>(0.0, steering_phase));
    const std::complex<double> nlos = gen.complex_normal(1.0);
    return std::sqrt(rho) * (los_w * los + nlos_w * nlos);
}

} // namespace

void ScenarioGeometry::validate() const {
    if (distance(tx_pos, rx_pos) <= 0.0 || distance(tx_pos, irs_pos) <= 0.0 ||
        distance(irs_pos, rx_pos) <= 0.0)
        throw std::invalid_argument("transmitter, receiver and IRS positions must be distinct");
    if (element_spacing_over_wavelength <= 0.0)
        throw std::invalid_argument("element spacing ratio must be positive");
}

void FadingParams::validate() const {
    if (pathloss_direct <= 0.0 || pathloss_tx_irs <= 0.0 || pathloss_irs_rx <= 0.0)
        throw std::invalid_argument("reference path losses must be positive");
    if (ref_distance_direct <= 0.0 || ref_distance_tx_irs <= 0.0 || ref_distance_irs_rx <= 0.0)
        throw std::invalid_argument("reference distances must be positive");
    if (exponent_direct < 1.0 || exponent_tx_irs < 1.0 || exponent_irs_rx < 1.0)
        throw std::invalid_argument("path-loss exponents must be >= 1");
    if (rician_tx_irs < 0.0 || rician_irs_rx < 0.0)
        throw std::invalid_argument("Rician factors must be nonnegative");
}

SteeringAngles angles_from_geometry(const ScenarioGeometry& geom) {
    geom.validate();
    SteeringAngles a;
    const auto dir_angles = [](const std::array<double, 3>& from,
                               const std::array<double, 3>& to, double& incl, double& azim) {
        const double dx = to[0] - from[0];
        const double dy = to[1] - from[1];
        const double dz = to[2] - from[2];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        incl = std::acos(dz / r);
        azim = wrap_two_pi(std::atan2(dy, dx));
    };
    dir_angles(geom.tx_pos, geom.irs_pos, a.inclination_arrival, a.azimuth_arrival);
    dir_angles(geom.irs_pos, geom.rx_pos, a.inclination_departure, a.azimuth_departure);
    return a;
}

ChannelEstimate sample_channel(const ScenarioGeometry& geom, const FadingParams& fading,
                               std::size_t L, const std::vector<double>& betas,
                               std::uint64_t seed) {
    geom.validate();
    fading.validate();
    if (L < 1)
        throw std::invalid_argument("at least one IRS element is required");
    if (betas.size() != L)
        throw std::invalid_argument("amplitude array length does not match L");
    for (double b : betas)
        if (b < 0.0 || b > 1.0)
            throw std::invalid_argument("element amplitudes must lie in [0, 1]");

    const double d0 = distance(geom.tx_pos, geom.rx_pos);
    const double du = distance(geom.tx_pos, geom.irs_pos);
    const double dv = distance(geom.irs_pos, geom.rx_pos);
    const double rho0 =
        path_loss(fading.pathloss_direct, d0, fading.ref_distance_direct, fading.exponent_direct);
    const double rho_u =
        path_loss(fading.pathloss_tx_irs, du, fading.ref_distance_tx_irs, fading.exponent_tx_irs);
    const double rho_v =
        path_loss(fading.pathloss_irs_rx, dv, fading.ref_distance_irs_rx, fading.exponent_irs_rx);

    const SteeringAngles& an = fading.angles;
    const double steer_a = 2.0 * std::numbers::pi * geom.element_spacing_over_wavelength *
                           std::sin(an.inclination_arrival) * std::cos(an.azimuth_arrival);
    const double steer_d = 2.0 * std::numbers::pi * geom.element_spacing_over_wavelength *
                           std::sin(an.inclination_departure) * std::cos(an.azimuth_departure);

    SplitMix64 gen(seed);
    std::vector<std::complex<double>> h(L + 1);
    h[0] = gen.complex_normal(rho0);
    for (std::size_t l = 0; l < L; ++l) {
        const double k = static_cast<double>(l); // (ell - 1) with 1-based elements
        const std::complex<double> u =
            rician_coefficient(rho_u, fading.rician_tx_irs, steer_a * k, gen);
        const std::complex<double> v =
            rician_coefficient(rho_v, fading.rician_irs_rx, steer_d * k, gen);
        h[l + 1] = betas[l] * u * v;
    }
    return ChannelEstimate::from_coeffs(std::move(h));
}

ChannelEstimate sample_channel(const ScenarioGeometry& geom, const FadingParams& fading,
                               std::size_t L, double beta, std::uint64_t seed) {
    return sample_channel(geom, fading, L, std::vector<double>(L, beta), seed);
}

ScenarioGeometry reference_geometry() {
    ScenarioGeometry g;
    g.tx_pos = {0.0, 0.0, 0.0};
    g.rx_pos = {100.0, 0.0, 0.0};
    g.irs_pos = {50.0, 20.0, 10.0};
    g.element_spacing_over_wavelength = 0.5;
    return g;
}

FadingParams reference_fading(const ScenarioGeometry& geom) {
    FadingParams f;
    f.rician_tx_irs = db_to_linear(5.0);
    f.rician_irs_rx = db_to_linear(5.0);
    f.angles = angles_from_geometry(geom);
    return f;
}

} // namespace irsact
