#pragma once

#include "ringlab/graph.hpp"
#include "ringlab/stats.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ringlab {

/// Which random digraph model a stream belongs to; part of the stream id.
enum class DigraphModel : std::uint64_t { kRegular = 0, kBinomial = 1 };

/// Stream id for one trial of one model in one grid cell:
/// ((2 * cell + model) << 32) | trial.
std::uint64_t trial_stream(std::uint64_t cell, DigraphModel model, std::uint64_t trial) noexcept;

struct MonteCarloOptions {
    std::uint64_t trials = 8000;
    std::uint64_t seed = 0;
    std::uint64_t cell = 0;
    unsigned threads = 1;
};

/// Fraction of k-in-degree regular digraphs on n nodes that are not strongly
/// connected. Throws kInvalidParams unless k < n.
EstimateResult estimate_not_sc_regular(Index k, Index n, const MonteCarloOptions& options);

/// Same for p-binomial digraphs. Throws kInvalidParams unless 0 <= p <= 1.
EstimateResult estimate_not_sc_binomial(double p, Index n, const MonteCarloOptions& options);

/// Conjectured upper bound 1 - exp(-2 exp(ln n - k n / (n - 1))) on the
/// probability that a p-binomial digraph with p = k / (n - 1) is not strongly
/// connected. Evaluated as -expm1(-2 exp(ln n - p n)).
double binomial_bound(double k, double n);

/// Limit 1 - exp(-2 exp(-c)) of the non-strong-connectivity probability when
/// p(n) = (ln n + c) / n.
double graham_pike_limit(double c);

struct GridSpec {
    std::vector<Index> k_values;
    std::vector<Index> n_values;
    std::uint64_t trials = 8000;
    std::uint64_t seed = 0;

    /// k in 1..16, n in 4, 8, ..., 4096, 8000 trials.
    static GridSpec reference();
    /// Throws kInvalidParams when empty, trials == 0, or no pair has k < n.
    void validate() const;
};

struct GridCell {
    Index k = 0;
    Index n = 0;
    double p = 0.0;
    EstimateResult p_reg;
    EstimateResult p_bin;
    double bound = 0.0;
    /// p_reg.estimate <= p_bin.ci_high
    bool conj1_ok = false;
    /// p_bin.estimate <= bound + 3 sigma(p_bin)
    bool conj2_ok = false;
};

/// Cells with k < n in k-major order (k outer, n inner); pairs with k >= n
/// are skipped. Cell index = position in the result.
std::vector<GridCell> check_conjectures_grid(const GridSpec& spec, unsigned threads = 1);

/// Estimates below this are flagged low-confidence in CSV output.
inline constexpr double kLowConfidenceThreshold = 1e-3;

/// CSV with header
/// model,k,n,p,trials,failures,estimate,ci_low,ci_high,bound,conj1_ok,conj2_ok,low_confidence
/// and one reg row and one bin row per cell; 12 significant digits, LF.
void write_grid_csv(std::ostream& out, const std::vector<GridCell>& cells);

/// Whitespace-separated table for gnuplot: k n p_reg p_bin bound, with a blank
/// line between k blocks.
void write_grid_gnuplot(std::ostream& out, const std::vector<GridCell>& cells);

} // namespace ringlab
