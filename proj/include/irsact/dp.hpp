#pragma once

#include "irsact/types.hpp"

namespace irsact {

/// Globally solve the continuous-phase robust EE problem: sort elements by
/// estimated magnitude, sweep the activation count, reconstruct the best
/// prefix. O(L log L) total.
Solution solve_dp(const ChannelEstimate& ch, double delta, double gamma_min, double gamma_bar,
                  const PowerModel& pm);

/// Optimal EE among activations with exactly M elements on (the M largest
/// magnitudes), or infeasible.
Solution solve_fixed_count(const ChannelEstimate& ch, double delta, double gamma_min,
                           double gamma_bar, const PowerModel& pm, std::size_t M);

} // namespace irsact
