#pragma once

#include "ringlab/graph.hpp"
#include "ringlab/samplers.hpp"

#include <vector>

namespace ringlab {

// All entropies are in nats.

/// Single-signer distribution: probability that each user is the signer.
class SignerDistribution {
public:
    /// Throws kInvalidDistribution on negative weights or a sum more than
    /// 1e-12 away from 1.
    static SignerDistribution create(std::vector<double> weights);
    static SignerDistribution uniform(Index n_users);

    const std::vector<double>& weights() const noexcept { return m_weights; }
    double operator[](Index user) const { return m_weights.at(user); }
    Index n_users() const noexcept { return static_cast<Index>(m_weights.size()); }

private:
    std::vector<double> m_weights;
};

/// Per-chunk spread of signer probabilities around the chunk mean.
struct DistributionDeviation {
    std::vector<double> chunk_mean;
    /// max over the chunk of |p(s) - mean|.
    std::vector<double> chunk_eps;
    /// sum over chunks of |C| * eps_C.
    double total_eps = 0.0;

    static DistributionDeviation compute(const Partition& partition, const SignerDistribution& dist);
};

inline constexpr Index kRegularExactCap = 20;
inline constexpr Index kBinomialExactCap = 16;

/// Conditional min-entropy of the signer given its ring,
/// -ln sum_r max_s Pr[ring = r | s] p(s), by enumerating every possible ring
/// of every chunk. Throws kInstanceTooLarge when a chunk exceeds the cap for
/// the sampler kind.
double anonymity_exact(const SamplerConfig& config, const SignerDistribution& dist,
                       Index regular_cap = kRegularExactCap, Index binomial_cap = kBinomialExactCap);

/// ln k - ln(eps_P + 1) for the regular sampler with k decoys; k >= 1.
double anonymity_bound_regular(Index k, const DistributionDeviation& deviation);

/// ln k - ln(eps_P + 1) for the binomial sampler, valid when p |C| > k for
/// every chunk. When `config` is given the hypothesis is checked and
/// kHypothesisViolated thrown if it fails.
double anonymity_bound_binomial(Index k, const DistributionDeviation& deviation,
                                const SamplerConfig* config = nullptr);

} // namespace ringlab
