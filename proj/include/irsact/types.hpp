#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsact {

/// Thrown when a theorem precondition (uncertainty radius bound, minimum
/// bit resolution) does not hold. Distinct from plain argument errors so
/// callers can tell a misconfigured model from a misuse of the API.
class assumption_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Thrown when a problem instance has no feasible activation.
class infeasible_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when the interior-point solver fails to converge. Carries the
/// last barrier value and residual so the failure is diagnosable.
class solver_error : public std::runtime_error {
  public:
    solver_error(const std::string& what, double last_objective, double last_residual)
        : std::runtime_error(what), last_objective(last_objective),
          last_residual(last_residual) {}

    double last_objective;
    double last_residual;
};

/// Per-element on/off states; entries are 0 or 1.
using ActivationVector = std::vector<std::uint8_t>;

std::size_t active_count(const ActivationVector& x) noexcept;

/// Wrap an angle into [0, 2*pi).
double wrap_two_pi(double angle) noexcept;

/// Estimated direct + cascaded channel coefficients in both cartesian and
/// polar form. Index 0 is the direct link, 1..L the cascaded links.
struct ChannelEstimate {
    std::vector<std::complex<double>> coeffs;
    std::vector<double> magnitudes;
    std::vector<double> phases; // in [0, 2*pi)
    double alpha_min = 0.0;     // cached min over all magnitudes

    std::size_t elements() const noexcept { return coeffs.size() - 1; }

    static ChannelEstimate from_coeffs(std::vector<std::complex<double>> h);
    static ChannelEstimate from_polar(std::vector<double> magnitudes,
                                      std::vector<double> phases);
};

/// CSI-uncertainty ball radius. Valid only while delta <= alpha_min of the
/// paired estimate; violations raise assumption_error, never clamp.
struct UncertaintySpec {
    double delta = 0.0;

    void validate(const ChannelEstimate& ch) const;
};

struct PowerModel {
    double transmit_power_w = 0.0;
    double amplifier_efficiency = 1.0; // in (0, 1]
    double static_power_w = 0.0;
    double on_power_w = 0.0;
    double off_power_w = 0.0;

    double fixed_power_w() const noexcept {
        return transmit_power_w / amplifier_efficiency + static_power_w;
    }

    void validate() const;
};

/// Phase-shift resolution: either continuous (infinite bits) or a b-bit
/// uniform grid.
struct PhaseMode {
    bool is_discrete = false;
    int bits = 0;

    static constexpr PhaseMode continuous() noexcept { return {false, 0}; }
    static PhaseMode discrete(int bits);
};

enum class SolveStatus { optimal, feasible, infeasible };

/// Result of an activation optimization. `ee` and `x` are meaningful only
/// when status != infeasible; infeasibility is a status, not a float
/// sentinel, so comparisons in the optimizers can never mix the two.
struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double ee = 0.0;
    ActivationVector x;
    std::size_t active = 0;   // number of activated elements
    double gap_bound = 0.0;   // a-posteriori optimality gap (CRBM only)
};

double db_to_linear(double db) noexcept;
double dbm_to_watt(double dbm) noexcept;

} // namespace irsact
