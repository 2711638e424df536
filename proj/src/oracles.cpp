#include "irsact/oracles.hpp"

#include "irsact/rng.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace irsact::oracles {

namespace {

ActivationVector from_mask(std::uint32_t mask, std::size_t L) {
    ActivationVector x(L, 0);
    for (std::size_t l = 0; l < L; ++l)
        x[l] = (mask >> l) & 1u;
    return x;
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

} // namespace

Solution exhaustive_search(const ChannelEstimate& ch, double delta, double gamma_min,
                           double gamma_bar, const PowerModel& pm, PhaseMode mode) {
    const std::size_t L = ch.elements();
    if (L > 25)
        throw std::invalid_argument("exhaustive search is guarded to L <= 25");
    pm.validate();
    const PhasePlan plan = make_phase_plan(ch, mode);

    Solution best;
    best.status = SolveStatus::infeasible;
    std::uint32_t best_mask = 0;
    const std::uint64_t count = std::uint64_t{1} << L;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        const ActivationVector x = from_mask(static_cast<std::uint32_t>(mask), L);
        const double snr = worst_case_snr(ch, x, delta, plan, gamma_bar);
        if (snr < gamma_min)
            continue;
        const double ee = std::log2(1.0 + snr) / total_power(pm, x, L);
        if (best.status == SolveStatus::infeasible || ee > best.ee ||
            (ee == best.ee && mask < best_mask)) {
            best.status = SolveStatus::optimal;
            best.ee = ee;
            best.x = x;
            best.active = active_count(x);
            best_mask = static_cast<std::uint32_t>(mask);
        }
    }
    return best;
}

double sampled_worst_snr(const ChannelEstimate& ch, const ActivationVector& x,
                         const PhasePlan& plan, double delta, double gamma_bar,
                         std::size_t samples, std::uint64_t seed,
                         bool include_constructed_point) {
    if (samples < 1)
        throw std::invalid_argument("at least one sample is required");
    const std::size_t n = ch.elements() + 1;
    SplitMix64 gen(seed);

    double worst = std::numeric_limits<double>::infinity();
    WorstCaseError err;
    err.magnitudes.resize(n);
    err.phases.resize(n);
    std::vector<std::complex<double>> draw(n);
    for (std::size_t s = 0; s < samples; ++s) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            draw[i] = gen.complex_normal(1.0);
            norm_sq += std::norm(draw[i]);
        }
        // Even draws land on the sphere (where the minimum lives), odd draws
        // fill the interior with the radius law that makes the ball uniform.
        double radius = delta;
        if (s % 2 == 1)
            radius *= std::pow(gen.uniform_pos(), 1.0 / static_cast<double>(2 * n));
        const double scale = norm_sq > 0.0 ? radius / std::sqrt(norm_sq) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err.magnitudes[i] = std::abs(draw[i]) * scale;
            err.phases[i] = wrap_two_pi(std::arg(draw[i]));
        }
        worst = std::min(worst, snr_at(ch, x, plan.phases, err, gamma_bar));
    }
    if (include_constructed_point) {
        const WorstCaseError analytic = worst_case_error(ch, x, delta, plan);
        worst = std::min(worst, snr_at(ch, x, plan.phases, analytic, gamma_bar));
    }
    return worst;
}

Solution enumerate_fixed_count(const ChannelEstimate& ch, double delta, double gamma_min,
                               double gamma_bar, const PowerModel& pm, std::size_t M,
                               PhaseMode mode) {
    const std::size_t L = ch.elements();
    if (M > L)
        throw std::invalid_argument("activation count exceeds the number of elements");
    if (binomial(L, M) > 1e6)
        throw std::invalid_argument("subset enumeration is guarded to 1e6 candidates");
    pm.validate();
    const PhasePlan plan = make_phase_plan(ch, mode);

    Solution best;
    best.status = SolveStatus::infeasible;
    std::vector<std::size_t> idx(M);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        ActivationVector x(L, 0);
        for (std::size_t i : idx)
            x[i] = 1;
        const double snr = worst_case_snr(ch, x, delta, plan, gamma_bar);
        if (snr >= gamma_min) {
            const double ee = std::log2(1.0 + snr) / total_power(pm, x, L);
            if (best.status == SolveStatus::infeasible || ee > best.ee) {
                best.status = SolveStatus::optimal;
                best.ee = ee;
                best.x = x;
                best.active = M;
            }
        }
        if (M == 0)
            break;
        // advance to the next combination in lexicographic order
        std::size_t i = M;
        while (i > 0 && idx[i - 1] == L - M + (i - 1))
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < M; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return best;
}

} // namespace irsact::oracles
