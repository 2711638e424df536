#include "irsact/verify.hpp"

#include "irsact/channel.hpp"
#include "irsact/crbm.hpp"
#include "irsact/dp.hpp"
#include "irsact/experiment.hpp"
#include "irsact/oracles.hpp"
#include "irsact/phase.hpp"
#include "irsact/rng.hpp"
#include "irsact/worst_case.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace irsact::verify {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void fail(SuiteReport& rep, const std::string& msg) {
    ++rep.failures;
    if (rep.messages.size() < 20)
        rep.messages.push_back(msg);
}

ChannelEstimate sample_reference(std::size_t L, std::uint64_t seed) {
    const ScenarioGeometry geom = reference_geometry();
    return sample_channel(geom, reference_fading(geom), L, 0.9, seed);
}

} // namespace

SuiteReport check_quantizer(std::uint64_t seed, std::size_t intensity) {
    SuiteReport rep;
    rep.suite = "quantizer";
    SplitMix64 gen(derive_seed(seed, 0x71, 0));
    for (int bits = 1; bits <= 12; ++bits) {
        const double omega = quantization_step(bits);
        for (std::size_t i = 0; i < intensity; ++i) {
            const double phase = gen.uniform01() * two_pi;
            ++rep.checks;
            const auto closed = quantize_level(phase, bits);
            const auto scanned = quantize_level_by_region_scan(phase, bits);
            if (closed != scanned) {
                std::ostringstream os;
                os << "level mismatch at b=" << bits << " phase=" << phase << ": " << closed
                   << " vs " << scanned;
                fail(rep, os.str());
                continue;
            }
            const double discrete = static_cast<double>(closed) * omega;
            const std::vector<double> eps =
                quantization_errors(std::vector<double>{phase}, std::vector<double>{discrete},
                                    bits);
            ++rep.checks;
            if (!(eps[0] > -0.5 * omega && eps[0] <= 0.5 * omega))
                fail(rep, "quantization error outside (-omega/2, omega/2]");
            // quantizing a grid point returns it unchanged
            ++rep.checks;
            if (quantize_level(discrete, bits) != closed)
                fail(rep, "quantizer not idempotent on its own grid");
        }
    }
    return rep;
}

SuiteReport check_worstcase(std::uint64_t seed, std::size_t intensity) {
    SuiteReport rep;
    rep.suite = "worstcase";
    SplitMix64 gen(derive_seed(seed, 0x72, 0));
    const double taus[] = {0.1, 0.5, 1.0};
    for (std::size_t i = 0; i < intensity; ++i) {
        const std::size_t L = 2 + gen.next() % 7;
        const ChannelEstimate ch = sample_reference(L, gen.next());
        ActivationVector x(L, 0);
        for (auto& b : x)
            b = gen.next() % 2;
        const double tau = taus[i % 3];
        const double delta = tau * ch.alpha_min;
        const PhaseMode modes[] = {PhaseMode::continuous(), PhaseMode::discrete(4)};
        for (const PhaseMode mode : modes) {
            const PhasePlan plan = make_phase_plan(ch, mode);
            const double closed = worst_case_snr(ch, x, delta, plan, 1.0);
            const double sampled =
                oracles::sampled_worst_snr(ch, x, plan, delta, 1.0, 2000, gen.next());
            ++rep.checks;
            if (sampled < closed * (1.0 - 1e-12))
                fail(rep, "sampled SNR fell below the closed form");
            const WorstCaseError err = worst_case_error(ch, x, delta, plan);
            const double attained = snr_at(ch, x, plan.phases, err, 1.0);
            // absolute floor covers the exact-cancellation case f == g
            const double floor = 1e-18 * ch.magnitudes[0] * ch.magnitudes[0];
            ++rep.checks;
            if (std::abs(attained - closed) > 1e-9 * std::max(closed, attained) + floor)
                fail(rep, "constructed error does not attain the closed form");
        }
    }
    return rep;
}

SuiteReport check_dp(std::uint64_t seed, std::size_t intensity) {
    SuiteReport rep;
    rep.suite = "dp";
    SplitMix64 gen(derive_seed(seed, 0x73, 0));
    const experiment::SystemParams sys;
    const PowerModel pm = sys.power_model(PhaseMode::continuous());
    for (std::size_t i = 0; i < intensity; ++i) {
        const std::size_t L = 4 + gen.next() % 9; // 4..12
        const ChannelEstimate ch = sample_reference(L, gen.next());
        const double tau = gen.uniform01();
        const double nu = gen.uniform01();
        const double delta = tau * ch.alpha_min;
        const ActivationVector all_on(L, 1);
        const double gamma_min =
            nu * worst_case_snr(ch, all_on, ch.alpha_min, PhaseMode::continuous(), sys.gamma_bar());
        const Solution dp = solve_dp(ch, delta, gamma_min, sys.gamma_bar(), pm);
        const Solution ex = oracles::exhaustive_search(ch, delta, gamma_min, sys.gamma_bar(),
                                                       pm, PhaseMode::continuous());
        ++rep.checks;
        if ((dp.status == SolveStatus::infeasible) != (ex.status == SolveStatus::infeasible)) {
            fail(rep, "feasibility verdicts differ");
            continue;
        }
        if (dp.status != SolveStatus::infeasible) {
            ++rep.checks;
            if (dp.ee != ex.ee)
                fail(rep, "dp EE differs from exhaustive EE");
        }
    }
    return rep;
}

SuiteReport check_crbm(std::uint64_t seed, std::size_t intensity) {
    SuiteReport rep;
    rep.suite = "crbm";
    SplitMix64 gen(derive_seed(seed, 0x74, 0));
    const experiment::SystemParams sys;
    const int bits = 4;
    const PowerModel pm = sys.power_model(PhaseMode::discrete(bits));
    for (std::size_t i = 0; i < intensity; ++i) {
        const std::size_t L = 4 + gen.next() % 9; // 4..12
        const ChannelEstimate ch = sample_reference(L, gen.next());
        const double tau = gen.uniform01();
        const double nu = 0.7 * gen.uniform01();
        const double delta = tau * ch.alpha_min;
        const ActivationVector all_on(L, 1);
        const double gamma_min = nu * worst_case_snr(ch, all_on, ch.alpha_min,
                                                     PhaseMode::discrete(bits), sys.gamma_bar());
        const PhasePlan plan = make_phase_plan(ch, PhaseMode::discrete(bits));
        const RelaxationProblem prob =
            build_relaxation(ch, plan.errors, delta, gamma_min, sys.gamma_bar(), pm, bits);
        const RelaxationSolution rel = solve_relaxation(prob);
        const Solution rounded = round_and_select(rel, ch, plan.errors, delta, gamma_min,
                                                  sys.gamma_bar(), pm);
        const Solution ex = oracles::exhaustive_search(ch, delta, gamma_min, sys.gamma_bar(),
                                                       pm, PhaseMode::discrete(bits));
        ++rep.checks;
        if (ex.status == SolveStatus::infeasible) {
            fail(rep, "exhaustive infeasible despite the all-on precondition");
            continue;
        }
        if (rounded.ee > ex.ee * (1.0 + 1e-12))
            fail(rep, "rounded EE exceeds the exhaustive optimum");
        ++rep.checks;
        if (ex.ee > rel.ee_rel * (1.0 + 1e-12))
            fail(rep, "exhaustive EE exceeds the relaxation bound");
        ++rep.checks;
        if (rounded.gap_bound < 0.0)
            fail(rep, "negative a-posteriori gap");
    }
    return rep;
}

std::vector<SuiteReport> check_all(std::uint64_t seed, std::size_t intensity) {
    return {check_quantizer(seed, intensity), check_worstcase(seed, intensity / 4 + 1),
            check_dp(seed, intensity / 10 + 1), check_crbm(seed, intensity / 10 + 1)};
}

} // namespace irsact::verify
