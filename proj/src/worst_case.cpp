#include "irsact/worst_case.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsact {

namespace {

constexpr double pi = std::numbers::pi;

void check_lengths(const ChannelEstimate& ch, const ActivationVector& x) {
    if (x.size() != ch.elements())
        throw std::invalid_argument("activation length does not match channel estimate");
}

void check_assumptions(const ChannelEstimate& ch, double delta, const PhaseMode& mode) {
    if (delta < 0.0)
        throw std::invalid_argument("uncertainty radius must be nonnegative");
    if (delta > ch.alpha_min)
        throw assumption_error("uncertainty radius exceeds the minimum estimated magnitude");
    if (mode.is_discrete && mode.bits < 2)
        throw assumption_error("worst-case results need at least 2 quantization bits");
}

double gain_for_plan(const ChannelEstimate& ch, const ActivationVector& x,
                     const PhasePlan& plan) {
    return plan.mode.is_discrete ? quantized_gain(ch, x, plan.errors, GainForm::quadratic)
                                 : aligned_gain(ch, x);
}

} // namespace

PhasePlan make_phase_plan(const ChannelEstimate& ch, PhaseMode mode) {
    PhasePlan plan;
    plan.mode = mode;
    if (mode.is_discrete) {
        PhaseShiftConfig cfg = make_phase_config(ch, mode.bits);
        plan.phases = std::move(cfg.discrete);
        plan.errors = std::move(cfg.errors);
    } else {
        plan.phases = optimal_phases(ch);
    }
    return plan;
}

double aligned_gain(const ChannelEstimate& ch, const ActivationVector& x) {
    check_lengths(ch, x);
    double f = ch.magnitudes[0];
    for (std::size_t l = 0; l < x.size(); ++l)
        if (x[l])
            f += ch.magnitudes[l + 1];
    return f;
}

double quantized_gain(const ChannelEstimate& ch, const ActivationVector& x,
                      std::span<const double> errors, GainForm form) {
    check_lengths(ch, x);
    if (errors.size() != x.size())
        throw std::invalid_argument("error array length does not match activation");
    const std::size_t L = x.size();
    switch (form) {
    case GainForm::magnitude: {
        std::complex<double> sum = ch.magnitudes[0];
        for (std::size_t l = 0; l < L; ++l)
            if (x[l])
                sum += ch.magnitudes[l + 1] * std::exp(std::complex<double>(0.0, errors[l]));
        return std::abs(sum);
    }
    case GainForm::quadratic: {
        double re = ch.magnitudes[0];
        double im = 0.0;
        for (std::size_t l = 0; l < L; ++l) {
            if (x[l]) {
                re += ch.magnitudes[l + 1] * std::cos(errors[l]);
                im += ch.magnitudes[l + 1] * std::sin(errors[l]);
            }
        }
        return std::sqrt(re * re + im * im);
    }
    case GainForm::min_expansion: {
        const double a0 = ch.magnitudes[0];
        double acc = a0 * a0;
        for (std::size_t l = 0; l < L; ++l) {
            const double al = ch.magnitudes[l + 1];
            const double zeta = al * al + 2.0 * a0 * al * std::cos(errors[l]);
            acc += zeta * (x[l] ? 1.0 : 0.0);
        }
        for (std::size_t n = 0; n + 1 < L; ++n) {
            for (std::size_t m = n + 1; m < L; ++m) {
                const double mu = 2.0 * ch.magnitudes[n + 1] * ch.magnitudes[m + 1] *
                                  std::cos(errors[n] - errors[m]);
                acc += mu * std::min(x[n] ? 1.0 : 0.0, x[m] ? 1.0 : 0.0);
            }
        }
        return std::sqrt(acc);
    }
    }
    throw std::invalid_argument("unknown gain form");
}

double uncertainty_loss(const ActivationVector& x, double delta) {
    if (delta < 0.0)
        throw std::invalid_argument("uncertainty radius must be nonnegative");
    return delta * std::sqrt(1.0 + static_cast<double>(active_count(x)));
}

double residual_phase(const ChannelEstimate& ch, const ActivationVector& x,
                      std::span<const double> errors) {
    check_lengths(ch, x);
    std::complex<double> sum = ch.magnitudes[0];
    for (std::size_t l = 0; l < x.size(); ++l)
        if (x[l])
            sum += ch.magnitudes[l + 1] * std::exp(std::complex<double>(0.0, errors[l]));
    if (std::abs(sum) == 0.0)
        throw std::domain_error("residual phase undefined: combined gain is zero");
    return wrap_two_pi(std::arg(sum));
}

double GainExpansion::cross_at(std::size_t n, std::size_t m) const {
    // packed upper triangle, n < m
    const std::size_t idx = n * count - n * (n + 1) / 2 + (m - n - 1);
    return cross[idx];
}

GainExpansion make_gain_expansion(const ChannelEstimate& ch, std::span<const double> errors,
                                  double delta) {
    const std::size_t L = ch.elements();
    if (errors.size() != L)
        throw std::invalid_argument("error array length does not match channel estimate");
    GainExpansion e;
    e.count = L;
    e.delta = delta;
    const double a0 = ch.magnitudes[0];
    e.direct_sq = a0 * a0;
    e.direct_sq_shifted = e.direct_sq - delta * delta;
    e.linear.resize(L);
    e.linear_shifted.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        const double al = ch.magnitudes[l + 1];
        e.linear[l] = al * al + 2.0 * a0 * al * std::cos(errors[l]);
        e.linear_shifted[l] = e.linear[l] - delta * delta;
    }
    e.cross.reserve(L * (L - 1) / 2);
    for (std::size_t n = 0; n + 1 < L; ++n)
        for (std::size_t m = n + 1; m < L; ++m)
            e.cross.push_back(2.0 * ch.magnitudes[n + 1] * ch.magnitudes[m + 1] *
                              std::cos(errors[n] - errors[m]));
    return e;
}

double total_power(const PowerModel& pm, const ActivationVector& x, std::size_t L) {
    if (x.size() != L)
        throw std::invalid_argument("activation length mismatch");
    const double on = static_cast<double>(active_count(x));
    return pm.fixed_power_w() + static_cast<double>(L) * pm.off_power_w +
           (pm.on_power_w - pm.off_power_w) * on;
}

double worst_case_snr(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                      const PhasePlan& plan, double gamma_bar) {
    check_lengths(ch, x);
    check_assumptions(ch, delta, plan.mode);
    const double f = gain_for_plan(ch, x, plan);
    const double g = uncertainty_loss(x, delta);
    const double d = f - g;
    if (d < 0.0)
        throw std::logic_error("worst-case gain dominance violated");
    return gamma_bar * d * d;
}

double worst_case_snr(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                      PhaseMode mode, double gamma_bar) {
    return worst_case_snr(ch, x, delta, make_phase_plan(ch, mode), gamma_bar);
}

double worst_case_se(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                     const PhasePlan& plan, double gamma_bar) {
    return std::log2(1.0 + worst_case_snr(ch, x, delta, plan, gamma_bar));
}

double worst_case_ee(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                     const PhasePlan& plan, double gamma_bar, const PowerModel& pm) {
    return worst_case_se(ch, x, delta, plan, gamma_bar) / total_power(pm, x, x.size());
}

double worst_case_ee(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                     PhaseMode mode, double gamma_bar, const PowerModel& pm) {
    return worst_case_ee(ch, x, delta, make_phase_plan(ch, mode), gamma_bar, pm);
}

WorstCaseError worst_case_error(const ChannelEstimate& ch, const ActivationVector& x,
                                double delta, const PhasePlan& plan) {
    check_lengths(ch, x);
    check_assumptions(ch, delta, plan.mode);
    const std::size_t L = x.size();
    const double lambda = delta / std::sqrt(1.0 + static_cast<double>(active_count(x)));
    // In continuous mode the combined estimate has argument theta_0 exactly;
    // with quantized phases it is rotated by the residual phase.
    const double base = plan.mode.is_discrete
                            ? residual_phase(ch, x, plan.errors) + ch.phases[0]
                            : ch.phases[0];
    WorstCaseError err;
    err.magnitudes.assign(L + 1, 0.0);
    err.phases.assign(L + 1, 0.0);
    err.magnitudes[0] = lambda;
    err.phases[0] = wrap_two_pi(base + pi);
    for (std::size_t l = 0; l < L; ++l) {
        if (x[l])
            err.magnitudes[l + 1] = lambda;
        err.phases[l + 1] = wrap_two_pi(base - plan.phases[l] + pi);
    }
    return err;
}

double snr_at(const ChannelEstimate& ch, const ActivationVector& x,
              std::span<const double> phases, const WorstCaseError& err, double gamma_bar) {
    check_lengths(ch, x);
    if (phases.size() != x.size() || err.magnitudes.size() != x.size() + 1 ||
        err.phases.size() != x.size() + 1)
        throw std::invalid_argument("length mismatch in SNR evaluation");
    std::complex<double> sum = ch.coeffs[0] + std::polar(err.magnitudes[0], err.phases[0]);
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (x[l]) {
            const std::complex<double> h =
                ch.coeffs[l + 1] + std::polar(err.magnitudes[l + 1], err.phases[l + 1]);
            sum += h * std::exp(std::complex<double>(0.0, phases[l]));
        }
    }
    return gamma_bar * std::norm(sum);
}

FeasibilityResult check_feasibility(const ChannelEstimate& ch, double delta, double gamma_min,
                                    PhaseMode mode, double gamma_bar) {
    if (gamma_min < 0.0)
        throw std::invalid_argument("minimum SNR must be nonnegative");
    const ActivationVector all_on(ch.elements(), 1);
    FeasibilityResult r;
    r.feasible = worst_case_snr(ch, all_on, delta, mode, gamma_bar) >= gamma_min;
    r.iff_certified = !mode.is_discrete || mode.bits >= 3;
    return r;
}

double snr_upper_bound(const GainExpansion& exp, const ActivationVector& x, double gamma_bar) {
    if (x.size() != exp.count)
        throw std::invalid_argument("activation length does not match expansion");
    double acc = exp.direct_sq_shifted;
    for (std::size_t l = 0; l < x.size(); ++l)
        if (x[l])
            acc += exp.linear_shifted[l];
    std::size_t idx = 0;
    for (std::size_t n = 0; n + 1 < x.size(); ++n)
        for (std::size_t m = n + 1; m < x.size(); ++m, ++idx)
            if (x[n] && x[m])
                acc += exp.cross[idx];
    return gamma_bar * acc;
}

} // namespace irsact
