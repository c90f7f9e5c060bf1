#pragma once

#include <cstdint>
#include <optional>

namespace ringlab {

// User and chunk counts are doubles here: the interesting regime (2^64 users)
// does not fit in 64-bit integers, and only their logarithms matter.

/// ceil(ln(2N) + sqrt(2 ln(2N))): decoy count sufficient for 2/(k+1)
/// security with N users in equal chunks. Requires N >= 1.
std::int64_t recommended_decoys(double n_users);

/// n_chunks * (1 - exp(-2 exp(ln(chunk_size) - k))), clamped to [0, 1]: the
/// conjectured bound on Pr[G != core(G)] for the regular sampler.
double core_mismatch_bound(double n_chunks, double chunk_size, double k);

/// Smallest integer 1 <= k < chunk_size with core_mismatch_bound <= 1/(k+1).
/// Throws kNoFeasibleK when none exists.
std::int64_t minimal_decoys_numeric(double n_chunks, double chunk_size);

/// Heuristic for beta-fraction black marbles per chunk:
/// ceil([ln(2(1-b)N) + sqrt(2 ln(2(1-b)N))] / (1-b)).
/// Throws kInvalidBeta unless 0 <= beta < 1, kDomainError when 2(1-b)N <= 1.
std::int64_t recommended_decoys_black_marble(double n_users, double beta);

struct Recommendation {
    std::int64_t k_closed_form = 0;
    /// Present when chunk geometry was supplied and a feasible k exists.
    std::optional<std::int64_t> k_numeric;
    /// 2 / (k_closed_form + 1).
    double target_security = 0.0;
    double n_users = 0.0;
    std::optional<double> n_chunks;
    std::optional<double> chunk_size;
    double beta = 0.0;
};

/// With beta > 0 the closed form is the black-marble heuristic.
Recommendation recommend(double n_users, double beta = 0.0, std::optional<double> n_chunks = std::nullopt,
                         std::optional<double> chunk_size = std::nullopt);

} // namespace ringlab
