#include "ringlab/recommend.hpp"

#include "ringlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ringlab {

namespace {

// ln(x) + sqrt(2 ln(x)) for x = 2 * effective user count.
double sufficient_k(double twice_users)
{
    const double l = std::log(twice_users);
    return l + std::sqrt(2.0 * l);
}

} // namespace

std::int64_t recommended_decoys(double n_users)
{
    if (!(n_users >= 1.0)) throw Error(ErrorKind::kInvalidParams, "need at least one user");
    return static_cast<std::int64_t>(std::ceil(sufficient_k(2.0 * n_users)));
}

double core_mismatch_bound(double n_chunks, double chunk_size, double k)
{
    const double per_chunk = -std::expm1(-2.0 * std::exp(std::log(chunk_size) - k));
    return std::clamp(n_chunks * per_chunk, 0.0, 1.0);
}

std::int64_t minimal_decoys_numeric(double n_chunks, double chunk_size)
{
    if (!(chunk_size >= 2.0)) throw Error(ErrorKind::kInvalidParams, "chunk size must be at least 2");
    if (!(n_chunks >= 1.0)) throw Error(ErrorKind::kInvalidParams, "need at least one chunk");
    // The left side decays doubly exponentially once k passes ln(chunk_size),
    // so the scan ends after a few dozen steps even for huge chunks.
    for (std::int64_t k = 1; static_cast<double>(k) < chunk_size; ++k) {
        const double kd = static_cast<double>(k);
        if (core_mismatch_bound(n_chunks, chunk_size, kd) <= 1.0 / (kd + 1.0)) return k;
    }
    throw Error(ErrorKind::kNoFeasibleK, "no k below the chunk size meets the bound");
}

std::int64_t recommended_decoys_black_marble(double n_users, double beta)
{
    if (!(beta >= 0.0 && beta < 1.0)) throw Error(ErrorKind::kInvalidBeta, "beta must lie in [0, 1)");
    const double effective = 2.0 * (1.0 - beta) * n_users;
    if (!(effective > 1.0)) {
        throw Error(ErrorKind::kDomainError, "2(1-beta)|U| must exceed 1");
    }
    return static_cast<std::int64_t>(std::ceil(sufficient_k(effective) / (1.0 - beta)));
}

Recommendation recommend(double n_users, double beta, std::optional<double> n_chunks, std::optional<double> chunk_size)
{
    Recommendation rec;
    rec.n_users = n_users;
    rec.beta = beta;
    rec.n_chunks = n_chunks;
    rec.chunk_size = chunk_size;
    rec.k_closed_form = beta == 0.0 ? recommended_decoys(n_users) : recommended_decoys_black_marble(n_users, beta);
    rec.target_security = 2.0 / static_cast<double>(rec.k_closed_form + 1);
    if (n_chunks && chunk_size) {
        try {
            rec.k_numeric = minimal_decoys_numeric(*n_chunks, *chunk_size);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::kNoFeasibleK) throw;
        }
    }
    return rec;
}

} // namespace ringlab
