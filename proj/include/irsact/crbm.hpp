#pragma once

#include "irsact/types.hpp"
#include "irsact/worst_case.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace irsact {

/// Concave-affine fractional relaxation of the discrete-phase activation
/// problem, after the Charnes-Cooper substitution y = t*x, t = 1/P_tot(x).
struct RelaxationProblem {
    GainExpansion expansion; // certified: all cross terms >= 0
    double gamma_bar = 0.0;
    double gamma_min = 0.0;
    double base_power = 0.0;  // P_fix + L * P_off
    double power_step = 0.0;  // P_on - P_off
    std::size_t count = 0;    // L
    int bits = 0;
};

struct SolverStats {
    int newton_iterations = 0;
    int barrier_stages = 0;
    double final_gradient_norm = 0.0; // stationarity residual of the barrier problem
    double duality_gap_estimate = 0.0;
    bool vertex_fallback = false; // relaxation had no strict interior
};

struct RelaxationSolution {
    std::vector<double> y;
    double t = 0.0;
    double w = 0.0; // auxiliary epigraph value, equals u(y) at the optimum
    std::vector<double> x_frac;
    double ee_rel = 0.0; // certified upper bound on the relaxation optimum
    SolverStats stats;
    int bits = 0;
};

RelaxationProblem build_relaxation(const ChannelEstimate& ch, std::span<const double> errors,
                                   double delta, double gamma_min, double gamma_bar,
                                   const PowerModel& pm, int bits);

/// Log-barrier interior-point solve of the Charnes-Cooper problem. The min
/// terms are lifted with one epigraph variable per pair; t and the epigraph
/// auxiliary w are eliminated analytically. Returns a point whose objective
/// is within tol (relative) of the global optimum, with the duality-gap
/// estimate in the stats.
RelaxationSolution solve_relaxation(const RelaxationProblem& prob, double tol = 1e-8);

/// Algorithm: sort the fractional solution, successively activate elements
/// in that order, keep the best feasible prefix. The returned gap_bound is
/// ee_rel - ee >= 0.
Solution round_and_select(const RelaxationSolution& rel, const ChannelEstimate& ch,
                          std::span<const double> errors, double delta, double gamma_min,
                          double gamma_bar, const PowerModel& pm);

/// End-to-end convex-relaxation-based method for discrete phase shifts.
Solution solve_crbm(const ChannelEstimate& ch, double delta, double gamma_min,
                    double gamma_bar, const PowerModel& pm, int bits);

/// Concave part of the transformed SNR bound, u(y) with the pairwise min
/// terms explicit; exposed for the relaxation's invariant checks.
double relaxation_u(const RelaxationProblem& prob, std::span<const double> y);

/// Fractional objective EE-hat(x) = log2(1 + gamma_hat(x)) / P_tot(x) for
/// x in [0,1]^L; the quantity the Charnes-Cooper transform maximizes.
double fractional_objective(const RelaxationProblem& prob, std::span<const double> x_frac);

/// gamma_hat at a fractional point (the concave SNR upper bound).
double fractional_snr_bound(const RelaxationProblem& prob, std::span<const double> x_frac);

} // namespace irsact
