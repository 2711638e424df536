#include "irsact/phase.hpp"

#include "irsact/rng.hpp"
#include "irsact/types.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace irsact;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

ChannelEstimate make_polar(std::vector<double> mags, std::vector<double> phases) {
    return ChannelEstimate::from_polar(std::move(mags), std::move(phases));
}

/// wrap-aware distance between two angles
double angle_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

} // namespace

TEST_SUITE_BEGIN("phase");

TEST_CASE("aligned channels need no phase shift") {
    const auto ch = make_polar({1.0, 0.5, 0.25}, {1.2, 1.2, 1.2});
    for (double p : optimal_phases(ch))
        CHECK(p == doctest::Approx(0.0));
}

TEST_CASE("optimal phase is the wrapped phase difference") {
    const auto ch = make_polar({1.0, 0.5}, {0.0, 3.0 * pi / 2.0});
    const auto phases = optimal_phases(ch);
    CHECK(phases[0] == doctest::Approx(pi / 2.0));
}

TEST_CASE("optimal phases maximize the error-free SNR") {
    SplitMix64 gen(2024);
    const std::size_t L = 5;
    std::vector<double> mags{0.8}, phs{gen.uniform01() * two_pi};
    for (std::size_t l = 0; l < L; ++l) {
        mags.push_back(0.1 + gen.uniform01());
        phs.push_back(gen.uniform01() * two_pi);
    }
    const auto ch = make_polar(mags, phs);
    const auto star = optimal_phases(ch);

    const auto snr_of = [&](const std::vector<double>& phases) {
        std::complex<double> s = ch.coeffs[0];
        for (std::size_t l = 0; l < L; ++l)
            s += ch.coeffs[l + 1] * std::exp(std::complex<double>(0.0, phases[l]));
        return std::norm(s);
    };

    double f_c = ch.magnitudes[0];
    for (std::size_t l = 0; l < L; ++l)
        f_c += ch.magnitudes[l + 1];
    const double best = snr_of(star);
    CHECK(best == doctest::Approx(f_c * f_c).epsilon(1e-12));

    std::vector<double> trial(L);
    for (int i = 0; i < 1000000; ++i) {
        for (auto& p : trial)
            p = gen.uniform01() * two_pi;
        REQUIRE(snr_of(trial) <= best * (1.0 + 1e-12));
    }
}

TEST_CASE("phases just below the wrap quantize to level zero") {
    for (int b = 1; b <= 10; ++b) {
        const double omega = quantization_step(b);
        const double phase = two_pi - omega / 4.0;
        CHECK(quantize_level(phase, b) == 0);
        CHECK(quantize_level_by_region_scan(phase, b) == 0);
    }
}

TEST_CASE("grid points are fixed points of the quantizer") {
    for (int b = 1; b <= 8; ++b) {
        const double omega = quantization_step(b);
        const std::uint32_t K = 1u << b;
        for (std::uint32_t k = 0; k < K; ++k) {
            const double phase = static_cast<double>(k) * omega;
            CHECK(quantize_level(phase, b) == k);
            CHECK(quantize_level_by_region_scan(phase, b) == k);
        }
    }
}

TEST_CASE("half-open region boundaries round up") {
    // pi/4 is the left edge of region 1 at two bits
    CHECK(quantize_level(pi / 4.0, 2) == 1);
    const auto q = quantize_phases(std::vector<double>{pi / 4.0}, 2);
    CHECK(q[0] == doctest::Approx(pi / 2.0));
    // 3*pi/4 is the left edge of region 2
    CHECK(quantize_level_by_region_scan(3.0 * pi / 4.0, 2) == 2);
    const auto q2 = quantize_phases_by_region_scan(std::vector<double>{3.0 * pi / 4.0}, 2);
    CHECK(q2[0] == doctest::Approx(pi));
}

TEST_CASE("scan handles the wrap-around region at three bits") {
    const double phase = 15.0 * pi / 8.0 + 1e-9; // inside [2*pi - omega/2, 2*pi)
    CHECK(quantize_level_by_region_scan(phase, 3) == 0);
    CHECK(quantize_level(phase, 3) == 0);
}

TEST_CASE("closed form and region scan agree bitwise") {
    SplitMix64 gen(404);
    for (int b = 1; b <= 12; ++b) {
        for (int i = 0; i < 20000; ++i) {
            const double phase = gen.uniform01() * two_pi;
            REQUIRE(quantize_level(phase, b) == quantize_level_by_region_scan(phase, b));
        }
    }
}

TEST_CASE("quantization errors resolve the wrap") {
    SUBCASE("grid input gives zero error") {
        const std::vector<double> grid{0.0, pi / 2.0, pi, 3.0 * pi / 2.0};
        const auto eps = quantization_errors(grid, grid, 2);
        for (double e : eps)
            CHECK(e == 0.0);
    }
    SUBCASE("wrap-resolved difference") {
        const int b = 3;
        const double omega = quantization_step(b);
        const std::vector<double> cont{two_pi - omega / 4.0};
        const std::vector<double> disc{0.0};
        const auto eps = quantization_errors(cont, disc, b);
        CHECK(eps[0] == doctest::Approx(omega / 4.0).epsilon(1e-12));
    }
    SUBCASE("bound holds over random draws for all bit widths") {
        SplitMix64 gen(11);
        for (int b = 1; b <= 10; ++b) {
            const double omega = quantization_step(b);
            std::vector<double> cont(1000);
            for (auto& p : cont)
                p = gen.uniform01() * two_pi;
            const auto disc = quantize_phases(cont, b);
            const auto eps = quantization_errors(cont, disc, b);
            for (double e : eps) {
                REQUIRE(e > -omega / 2.0);
                REQUIRE(e <= omega / 2.0);
            }
        }
    }
}

TEST_CASE("quantized phase converges to the continuous one") {
    SplitMix64 gen(5150);
    for (int i = 0; i < 200; ++i) {
        const double phase = gen.uniform01() * two_pi;
        double prev_bound = two_pi;
        for (int b = 1; b <= 14; ++b) {
            const double bound = pi / std::pow(2.0, b);
            const double q = static_cast<double>(quantize_level(phase, b)) *
                             quantization_step(b);
            REQUIRE(angle_dist(q, phase) <= bound * (1.0 + 1e-12));
            REQUIRE(bound < prev_bound);
            prev_bound = bound;
        }
    }
}

TEST_CASE("quantizing a quantized array is the identity") {
    SplitMix64 gen(77);
    for (int b = 1; b <= 10; ++b) {
        std::vector<double> cont(200);
        for (auto& p : cont)
            p = gen.uniform01() * two_pi;
        const auto once = quantize_phases(cont, b);
        const auto twice = quantize_phases(once, b);
        for (std::size_t i = 0; i < once.size(); ++i)
            REQUIRE(once[i] == twice[i]);
    }
}

TEST_CASE("bad arguments are rejected") {
    CHECK_THROWS_AS(quantization_step(0), std::invalid_argument);
    CHECK_THROWS_AS(quantize_level(0.0, -1), std::invalid_argument);
    CHECK_THROWS_AS(quantization_errors(std::vector<double>{0.0}, std::vector<double>{}, 2),
                    std::invalid_argument);
}

TEST_CASE("phase config ties the pieces together") {
    const auto ch = make_polar({1.0, 0.4, 0.3, 0.2}, {0.3, 2.9, 5.0, 1.0});
    const auto cfg = make_phase_config(ch, 4);
    CHECK(cfg.bits == 4);
    CHECK(cfg.continuous.size() == 3);
    for (std::size_t l = 0; l < 3; ++l) {
        const double rebuilt = wrap_two_pi(cfg.continuous[l] + cfg.errors[l]);
        CHECK(angle_dist(rebuilt, cfg.discrete[l]) < 1e-12);
        CHECK(std::abs(cfg.errors[l]) <= cfg.step / 2.0);
    }
}

TEST_SUITE_END();
