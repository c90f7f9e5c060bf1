#include "ringlab/conjecture.hpp"

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/random.hpp"
#include "ringlab/samplers.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ringlab {

std::uint64_t trial_stream(std::uint64_t cell, DigraphModel model, std::uint64_t trial) noexcept
{
    return ((2 * cell + static_cast<std::uint64_t>(model)) << 32) | (trial & 0xFFFFFFFFu);
}

namespace {

template <class Sample>
EstimateResult estimate_failures(DigraphModel model, const MonteCarloOptions& options, Sample sample)
{
    if (options.trials == 0) throw Error(ErrorKind::kInvalidParams, "trials must be at least 1");
    if (options.trials > 0xFFFFFFFFull) throw Error(ErrorKind::kInvalidParams, "trials exceed 2^32");
    const auto failures = parallel_accumulate<std::uint64_t>(
        options.trials, options.threads, [&](std::uint64_t t, std::uint64_t& acc) {
            RandomSource rng(options.seed, trial_stream(options.cell, model, t));
            if (!is_strongly_connected(sample(rng))) ++acc;
        });
    return make_estimate(failures, options.trials);
}

} // namespace

EstimateResult estimate_not_sc_regular(Index k, Index n, const MonteCarloOptions& options)
{
    if (k >= n) throw Error(ErrorKind::kInvalidParams, "regular model needs k < n");
    return estimate_failures(DigraphModel::kRegular, options,
                             [&](RandomSource& rng) { return sample_regular_digraph(k, n, rng); });
}

EstimateResult estimate_not_sc_binomial(double p, Index n, const MonteCarloOptions& options)
{
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kInvalidParams, "p must lie in [0, 1]");
    return estimate_failures(DigraphModel::kBinomial, options,
                             [&](RandomSource& rng) { return sample_binomial_digraph(p, n, rng); });
}

double binomial_bound(double k, double n)
{
    const double p = k / (n - 1.0);
    return -std::expm1(-2.0 * std::exp(std::log(n) - p * n));
}

double graham_pike_limit(double c)
{
    return -std::expm1(-2.0 * std::exp(-c));
}

GridSpec GridSpec::reference()
{
    GridSpec spec;
    for (Index k = 1; k <= 16; ++k) spec.k_values.push_back(k);
    for (Index n = 4; n <= 4096; n *= 2) spec.n_values.push_back(n);
    return spec;
}

void GridSpec::validate() const
{
    if (k_values.empty() || n_values.empty()) throw Error(ErrorKind::kInvalidParams, "empty grid");
    if (trials == 0) throw Error(ErrorKind::kInvalidParams, "trials must be at least 1");
    const Index n_max = *std::max_element(n_values.begin(), n_values.end());
    const Index k_min = *std::min_element(k_values.begin(), k_values.end());
    if (k_min >= n_max) throw Error(ErrorKind::kInvalidParams, "no cell with k < n");
}

std::vector<GridCell> check_conjectures_grid(const GridSpec& spec, unsigned threads)
{
    spec.validate();
    std::vector<GridCell> cells;
    std::uint64_t index = 0;
    for (Index k : spec.k_values) {
        for (Index n : spec.n_values) {
            if (k >= n) continue;
            GridCell cell;
            cell.k = k;
            cell.n = n;
            cell.p = static_cast<double>(k) / static_cast<double>(n - 1);
            const MonteCarloOptions options{spec.trials, spec.seed, index++, threads};
            cell.p_reg = estimate_not_sc_regular(k, n, options);
            cell.p_bin = estimate_not_sc_binomial(cell.p, n, options);
            cell.bound = binomial_bound(k, n);
            cell.conj1_ok = cell.p_reg.estimate <= cell.p_bin.ci_high;
            cell.conj2_ok = cell.p_bin.estimate <= cell.bound + 3.0 * cell.p_bin.sigma();
            cells.push_back(cell);
        }
    }
    return cells;
}

void write_grid_csv(std::ostream& out, const std::vector<GridCell>& cells)
{
    out << "model,k,n,p,trials,failures,estimate,ci_low,ci_high,bound,conj1_ok,conj2_ok,low_confidence\n";
    auto row = [&](const char* model, const GridCell& c, const EstimateResult& e) {
        fmt::print(out, "{},{},{},{:.12g},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{},{},{}\n", model, c.k, c.n, c.p,
                   e.trials, e.events, e.estimate, e.ci_low, e.ci_high, c.bound, c.conj1_ok, c.conj2_ok,
                   e.estimate < kLowConfidenceThreshold);
    };
    for (const GridCell& c : cells) {
        row("reg", c, c.p_reg);
        row("bin", c, c.p_bin);
    }
}

void write_grid_gnuplot(std::ostream& out, const std::vector<GridCell>& cells)
{
    out << "# k n p_reg p_bin bound\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const GridCell& c = cells[i];
        if (i > 0 && cells[i - 1].k != c.k) out << '\n';
        fmt::print(out, "{} {} {:.12g} {:.12g} {:.12g}\n", c.k, c.n, c.p_reg.estimate, c.p_bin.estimate, c.bound);
    }
}

} // namespace ringlab
