#pragma once

#include "irsact/phase.hpp"
#include "irsact/types.hpp"

#include <span>
#include <vector>

namespace irsact {

/// Phase shifts actually applied at the IRS for one estimate, plus the
/// quantization errors when the grid is finite.
struct PhasePlan {
    PhaseMode mode;
    std::vector<double> phases; // applied shifts (optimal or quantized)
    std::vector<double> errors; // empty in continuous mode
};

PhasePlan make_phase_plan(const ChannelEstimate& ch, PhaseMode mode);

enum class GainForm { magnitude, quadratic, min_expansion };

/// Combined channel gain with perfectly aligned (continuous) phases:
/// alpha_0 + sum_l x_l alpha_l.
double aligned_gain(const ChannelEstimate& ch, const ActivationVector& x);

/// Combined channel gain under quantization errors,
/// |alpha_0 + sum_l x_l alpha_l e^{j eps_l}|, by one of three algebraically
/// equal routes (complex magnitude, explicit cos/sin sums, or the quadratic
/// expansion with pairwise min terms).
double quantized_gain(const ChannelEstimate& ch, const ActivationVector& x,
                      std::span<const double> errors, GainForm form);

/// Largest possible aligned error mass inside the radius-delta ball:
/// delta * sqrt(1 + sum x).
double uncertainty_loss(const ActivationVector& x, double delta);

/// Principal argument of alpha_0 + sum_l x_l alpha_l e^{j eps_l}, in [0, 2*pi).
double residual_phase(const ChannelEstimate& ch, const ActivationVector& x,
                      std::span<const double> errors);

/// Coefficients of the quadratic expansion of the squared quantized gain,
/// shifted by delta^2 where the robust bound needs it. `cross` is the packed
/// upper triangle (n < m).
struct GainExpansion {
    double direct_sq = 0.0;            // alpha_0^2
    std::vector<double> linear;        // alpha_l^2 + 2 alpha_0 alpha_l cos(eps_l)
    std::vector<double> cross;         // 2 alpha_n alpha_m cos(eps_n - eps_m)
    std::vector<double> linear_shifted; // linear - delta^2
    double direct_sq_shifted = 0.0;    // alpha_0^2 - delta^2
    double delta = 0.0;
    std::size_t count = 0; // L

    double cross_at(std::size_t n, std::size_t m) const; // n < m, 0-based
};

GainExpansion make_gain_expansion(const ChannelEstimate& ch, std::span<const double> errors,
                                  double delta);

/// Channel error attaining the worst-case SNR: magnitudes split evenly over
/// the direct link and the active elements, phases antipodal to the combined
/// estimated signal.
struct WorstCaseError {
    std::vector<double> magnitudes; // L+1
    std::vector<double> phases;     // L+1, in [0, 2*pi)
};

double total_power(const PowerModel& pm, const ActivationVector& x, std::size_t L);

double worst_case_snr(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                      const PhasePlan& plan, double gamma_bar);
double worst_case_snr(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                      PhaseMode mode, double gamma_bar);

double worst_case_se(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                     const PhasePlan& plan, double gamma_bar);

double worst_case_ee(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                     const PhasePlan& plan, double gamma_bar, const PowerModel& pm);
double worst_case_ee(const ChannelEstimate& ch, const ActivationVector& x, double delta,
                     PhaseMode mode, double gamma_bar, const PowerModel& pm);

WorstCaseError worst_case_error(const ChannelEstimate& ch, const ActivationVector& x,
                                double delta, const PhasePlan& plan);

/// SNR of the full signal model at an explicit channel error, for the given
/// applied phase shifts. This is the raw |.|^2 evaluation the closed forms
/// are checked against.
double snr_at(const ChannelEstimate& ch, const ActivationVector& x,
              std::span<const double> phases, const WorstCaseError& err, double gamma_bar);

struct FeasibilityResult {
    bool feasible = false;
    /// True when the check is necessary and sufficient (continuous mode, or
    /// discrete with b >= 3). At b = 2 a pass is only a sufficient condition.
    bool iff_certified = false;
};

FeasibilityResult check_feasibility(const ChannelEstimate& ch, double delta, double gamma_min,
                                    PhaseMode mode, double gamma_bar);

/// Concave upper bound on the worst-case SNR used by the relaxation:
/// gamma_bar * (xi + sum zeta' x + sum mu min(x_n, x_m)).
double snr_upper_bound(const GainExpansion& exp, const ActivationVector& x, double gamma_bar);

} // namespace irsact
