#include "ringlab/stats.hpp"

#include "ringlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace ringlab {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

double EstimateResult::sigma() const noexcept
{
    if (trials == 0) return 0.0;
    return std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
}

EstimateResult make_estimate(std::uint64_t events, std::uint64_t trials)
{
    if (trials == 0) throw Error(ErrorKind::kInvalidParams, "estimate needs at least one trial");
    if (events > trials) throw Error(ErrorKind::kInvalidParams, "more events than trials");
    EstimateResult r;
    r.trials = trials;
    r.events = events;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(events) / n;
    r.estimate = p;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    r.ci_low = std::clamp(centre - half, 0.0, p);
    r.ci_high = std::clamp(centre + half, p, 1.0);
    if (events == 0) r.ci_low = 0.0;
    if (events == trials) r.ci_high = 1.0;
    return r;
}

} // namespace ringlab
