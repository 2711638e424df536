#pragma once

#include "irsact/types.hpp"
#include "irsact/worst_case.hpp"

#include <cstdint>

namespace irsact::oracles {

/// Exact global optimum by trying every activation vector. Guarded to
/// L <= 25; evaluation is from scratch per candidate so this stays a truly
/// independent reference. Equal-EE ties go to the lowest binary value.
Solution exhaustive_search(const ChannelEstimate& ch, double delta, double gamma_min,
                           double gamma_bar, const PowerModel& pm, PhaseMode mode);

/// Minimum sampled SNR over the uncertainty ball: interleaved draws on the
/// radius-delta sphere and in the interior, plus (optionally) the analytic
/// worst-case point.
double sampled_worst_snr(const ChannelEstimate& ch, const ActivationVector& x,
                         const PhasePlan& plan, double delta, double gamma_bar,
                         std::size_t samples, std::uint64_t seed,
                         bool include_constructed_point = false);

/// Exact optimum over all activations with exactly M elements on, by
/// lexicographic enumeration of the C(L, M) subsets (guarded to 1e6).
Solution enumerate_fixed_count(const ChannelEstimate& ch, double delta, double gamma_min,
                               double gamma_bar, const PowerModel& pm, std::size_t M,
                               PhaseMode mode);

} // namespace irsact::oracles
