#include "ringlab/entropy.hpp"

#include "ringlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ringlab {

SignerDistribution SignerDistribution::create(std::vector<double> weights)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
            throw Error(ErrorKind::kInvalidDistribution, "weight " + std::to_string(i) + " is negative or not finite");
        }
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorKind::kInvalidDistribution, "weights sum to " + std::to_string(sum) + ", not 1");
    }
    SignerDistribution d;
    d.m_weights = std::move(weights);
    return d;
}

SignerDistribution SignerDistribution::uniform(Index n_users)
{
    if (n_users == 0) throw Error(ErrorKind::kInvalidDistribution, "no users");
    SignerDistribution d;
    d.m_weights.assign(n_users, 1.0 / n_users);
    return d;
}

DistributionDeviation DistributionDeviation::compute(const Partition& partition, const SignerDistribution& dist)
{
    if (partition.n_users() != dist.n_users()) {
        throw Error(ErrorKind::kInvalidDistribution, "distribution and partition disagree on user count");
    }
    DistributionDeviation dev;
    for (const auto& chunk : partition.chunks()) {
        double mean = 0.0;
        for (Index u : chunk) mean += dist[u];
        mean /= static_cast<double>(chunk.size());
        double eps = 0.0;
        for (Index u : chunk) eps = std::max(eps, std::abs(dist[u] - mean));
        dev.chunk_mean.push_back(mean);
        dev.chunk_eps.push_back(eps);
        dev.total_eps += static_cast<double>(chunk.size()) * eps;
    }
    return dev;
}

namespace {

double binomial_coefficient(unsigned n, unsigned k)
{
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// sum over (k+1)-subsets of the chunk of the largest member weight, divided
// by C(n-1, k), the number of rings each member can draw.
double regular_chunk_mass(const std::vector<double>& w, Index decoys)
{
    const auto n = static_cast<unsigned>(w.size());
    const unsigned size = decoys + 1;
    std::vector<unsigned> idx(size);
    std::iota(idx.begin(), idx.end(), 0u);
    double sum = 0.0;
    while (true) {
        double best = 0.0;
        for (unsigned i : idx) best = std::max(best, w[i]);
        sum += best;
        int pos = static_cast<int>(size) - 1;
        while (pos >= 0 && idx[pos] == n - size + static_cast<unsigned>(pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (unsigned j = static_cast<unsigned>(pos) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return sum / binomial_coefficient(n - 1, decoys);
}

// sum over non-empty subsets r of p^{|r|-1} (1-p)^{n-|r|} max_{s in r} w[s].
double binomial_chunk_mass(const std::vector<double>& w, double p)
{
    const auto n = static_cast<unsigned>(w.size());
    std::vector<double> ring_prob(n + 1);
    for (unsigned s = 1; s <= n; ++s) {
        ring_prob[s] = std::pow(p, static_cast<double>(s - 1)) * std::pow(1.0 - p, static_cast<double>(n - s));
    }
    double sum = 0.0;
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1u;
    for (std::uint32_t mask = 1; mask != 0 && mask <= full; ++mask) {
        double best = 0.0;
        for (std::uint32_t m = mask; m != 0; m &= m - 1) {
            best = std::max(best, w[static_cast<unsigned>(__builtin_ctz(m))]);
        }
        sum += ring_prob[static_cast<unsigned>(__builtin_popcount(mask))] * best;
    }
    return sum;
}

} // namespace

double anonymity_exact(const SamplerConfig& config, const SignerDistribution& dist, Index regular_cap,
                       Index binomial_cap)
{
    const Partition& partition = config.partition();
    if (partition.n_users() != dist.n_users()) {
        throw Error(ErrorKind::kInvalidDistribution, "distribution and partition disagree on user count");
    }
    double mass = 0.0;
    for (const auto& chunk : partition.chunks()) {
        std::vector<double> w;
        w.reserve(chunk.size());
        for (Index u : chunk) w.push_back(dist[u]);
        if (const auto* reg = std::get_if<RegularSampler>(&config.kind())) {
            if (chunk.size() > regular_cap) {
                throw Error(ErrorKind::kInstanceTooLarge,
                            "chunk of " + std::to_string(chunk.size()) + " exceeds exact cap " +
                                std::to_string(regular_cap));
            }
            mass += regular_chunk_mass(w, reg->decoys);
        } else {
            if (chunk.size() > binomial_cap) {
                throw Error(ErrorKind::kInstanceTooLarge,
                            "chunk of " + std::to_string(chunk.size()) + " exceeds exact cap " +
                                std::to_string(binomial_cap));
            }
            mass += binomial_chunk_mass(w, std::get<BinomialSampler>(config.kind()).p);
        }
    }
    return -std::log(mass);
}

double anonymity_bound_regular(Index k, const DistributionDeviation& deviation)
{
    if (k == 0) throw Error(ErrorKind::kInvalidParams, "bound needs k >= 1");
    return std::log(static_cast<double>(k)) - std::log1p(deviation.total_eps);
}

double anonymity_bound_binomial(Index k, const DistributionDeviation& deviation, const SamplerConfig* config)
{
    if (k == 0) throw Error(ErrorKind::kInvalidParams, "bound needs k >= 1");
    if (config != nullptr) {
        const auto* bin = std::get_if<BinomialSampler>(&config->kind());
        if (bin == nullptr) throw Error(ErrorKind::kInvalidConfig, "binomial bound needs a binomial sampler");
        for (const auto& chunk : config->partition().chunks()) {
            if (!(bin->p * static_cast<double>(chunk.size()) > static_cast<double>(k))) {
                throw Error(ErrorKind::kHypothesisViolated,
                            "p|C| = " + std::to_string(bin->p * static_cast<double>(chunk.size())) +
                                " is not above k = " + std::to_string(k));
            }
        }
    }
    return std::log(static_cast<double>(k)) - std::log1p(deviation.total_eps);
}

} // namespace ringlab
