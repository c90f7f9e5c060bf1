#pragma once

#include <cstdint>

namespace ringlab {

/// Monte Carlo estimate of a Bernoulli event probability with its 95% Wilson
/// score interval. `events` counts occurrences of the estimated event
/// (failures of strong connectivity, adversary successes, ...).
struct EstimateResult {
    std::uint64_t trials = 0;
    std::uint64_t events = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;

    /// Normal-approximation standard error sqrt(p(1-p)/trials).
    double sigma() const noexcept;

    friend bool operator==(const EstimateResult&, const EstimateResult&) = default;
};

/// Requires trials >= 1 and events <= trials.
EstimateResult make_estimate(std::uint64_t events, std::uint64_t trials);

} // namespace ringlab
