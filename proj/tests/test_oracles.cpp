#include "irsact/oracles.hpp"

#include "irsact/channel.hpp"
#include "irsact/dp.hpp"
#include "irsact/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace irsact;
using namespace irsact::oracles;

namespace {

ChannelEstimate reference_channel(std::size_t L, std::uint64_t seed) {
    const ScenarioGeometry geom = reference_geometry();
    return sample_channel(geom, reference_fading(geom), L, 0.9, seed);
}

PowerModel discrete_power(int bits) {
    PowerModel pm;
    pm.transmit_power_w = dbm_to_watt(15.0);
    pm.amplifier_efficiency = 0.8;
    pm.static_power_w = 10e-3;
    pm.on_power_w = (1.8 * bits - 3.0) * 1e-3;
    pm.off_power_w = 0.3e-3;
    return pm;
}

constexpr double gamma_bar_ref = 1e11;

} // namespace

TEST_SUITE_BEGIN("oracles");

TEST_CASE("single-element search picks the better of the two activations") {
    const auto ch = reference_channel(1, 3);
    const auto pm = discrete_power(4);
    const double delta = 0.2 * ch.alpha_min;
    const auto mode = PhaseMode::discrete(4);
    const auto sol = exhaustive_search(ch, delta, 0.0, gamma_bar_ref, pm, mode);
    const double off = worst_case_ee(ch, {0}, delta, mode, gamma_bar_ref, pm);
    const double on = worst_case_ee(ch, {1}, delta, mode, gamma_bar_ref, pm);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.ee == std::max(off, on));
}

TEST_CASE("guards reject oversized problems") {
    const auto ch = reference_channel(26, 5);
    CHECK_THROWS_AS(exhaustive_search(ch, 0.0, 0.0, gamma_bar_ref, discrete_power(4),
                                      PhaseMode::discrete(4)),
                    std::invalid_argument);
    const auto small = reference_channel(4, 5);
    CHECK_THROWS_AS(enumerate_fixed_count(small, 0.0, 0.0, gamma_bar_ref, discrete_power(4),
                                          5, PhaseMode::discrete(4)),
                    std::invalid_argument);
}

TEST_CASE("exhaustive search agrees with dp in continuous mode") {
    PowerModel pm = discrete_power(4);
    pm.on_power_w = 15e-3;
    SplitMix64 gen(6);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t L = 2 + gen.next() % 10;
        const auto ch = reference_channel(L, 100 + trial);
        const double delta = gen.uniform01() * ch.alpha_min;
        const auto dp = solve_dp(ch, delta, 0.0, gamma_bar_ref, pm);
        const auto ex =
            exhaustive_search(ch, delta, 0.0, gamma_bar_ref, pm, PhaseMode::continuous());
        REQUIRE(dp.status == SolveStatus::optimal);
        REQUIRE(ex.status == SolveStatus::optimal);
        REQUIRE(dp.ee == ex.ee);
    }
}

TEST_CASE("sampled worst SNR") {
    SplitMix64 gen(7);
    const auto ch = reference_channel(6, 11);
    const ActivationVector x{1, 0, 1, 1, 0, 1};

    SUBCASE("zero radius gives the ideal SNR exactly") {
        const auto plan = make_phase_plan(ch, PhaseMode::continuous());
        const double f = aligned_gain(ch, x);
        const double v = sampled_worst_snr(ch, x, plan, 0.0, gamma_bar_ref, 100, 1);
        CHECK(v == doctest::Approx(gamma_bar_ref * f * f).epsilon(1e-12));
    }
    SUBCASE("constructed point reproduces the closed form") {
        for (const auto mode : {PhaseMode::continuous(), PhaseMode::discrete(4)}) {
            const auto plan = make_phase_plan(ch, mode);
            const double delta = 0.6 * ch.alpha_min;
            const double closed = worst_case_snr(ch, x, delta, plan, gamma_bar_ref);
            const double v =
                sampled_worst_snr(ch, x, plan, delta, gamma_bar_ref, 500, 2, true);
            CHECK(v <= closed * (1.0 + 1e-12));
            CHECK(v >= closed * (1.0 - 1e-9));
        }
    }
    SUBCASE("random draws never undercut the closed form") {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t L = 1 + gen.next() % 6;
            const auto c2 = reference_channel(L, 200 + trial);
            ActivationVector x2(L, 0);
            for (auto& b : x2)
                b = gen.next() % 2;
            const double delta = gen.uniform01() * c2.alpha_min;
            const auto plan = make_phase_plan(c2, PhaseMode::discrete(3));
            const double closed = worst_case_snr(c2, x2, delta, plan, gamma_bar_ref);
            const double v =
                sampled_worst_snr(c2, x2, plan, delta, gamma_bar_ref, 2000, gen.next());
            REQUIRE(v >= closed * (1.0 - 1e-12));
        }
    }
    SUBCASE("deterministic under a fixed seed") {
        const auto plan = make_phase_plan(ch, PhaseMode::discrete(4));
        const double a =
            sampled_worst_snr(ch, x, plan, 0.5 * ch.alpha_min, gamma_bar_ref, 1000, 77);
        const double b =
            sampled_worst_snr(ch, x, plan, 0.5 * ch.alpha_min, gamma_bar_ref, 1000, 77);
        CHECK(a == b);
    }
}

TEST_CASE("fixed-count enumeration endpoints") {
    const auto ch = reference_channel(6, 13);
    const auto pm = discrete_power(4);
    const auto mode = PhaseMode::discrete(4);
    const double delta = 0.4 * ch.alpha_min;
    const auto none = enumerate_fixed_count(ch, delta, 0.0, gamma_bar_ref, pm, 0, mode);
    REQUIRE(none.status == SolveStatus::optimal);
    CHECK(none.active == 0);
    CHECK(none.ee ==
          doctest::Approx(worst_case_ee(ch, ActivationVector(6, 0), delta, mode,
                                        gamma_bar_ref, pm)));
    const auto all = enumerate_fixed_count(ch, delta, 0.0, gamma_bar_ref, pm, 6, mode);
    REQUIRE(all.status == SolveStatus::optimal);
    CHECK(all.active == 6);
}

TEST_SUITE_END();
