#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace irsact::verify {

struct SuiteReport {
    std::string suite;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;

    bool passed() const noexcept { return failures == 0; }
};

/// Closed-form quantizer against the decision-region scan, bitwise on the
/// level index, plus the error-bound and idempotence properties.
SuiteReport check_quantizer(std::uint64_t seed, std::size_t intensity);

/// Sampled-minimum inequality over the uncertainty ball and attainment of
/// the closed form by the constructed worst-case error, both modes.
SuiteReport check_worstcase(std::uint64_t seed, std::size_t intensity);

/// DP against exhaustive search: equal EE and matching feasibility verdicts.
SuiteReport check_dp(std::uint64_t seed, std::size_t intensity);

/// CRBM sandwich: rounded EE <= exhaustive EE <= relaxation bound.
SuiteReport check_crbm(std::uint64_t seed, std::size_t intensity);

std::vector<SuiteReport> check_all(std::uint64_t seed, std::size_t intensity);

} // namespace irsact::verify
