#include "ringlab/conjecture.hpp"
#include "ringlab/error.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ringlab;

namespace {

MonteCarloOptions options(std::uint64_t trials, std::uint64_t seed = 0)
{
    MonteCarloOptions o;
    o.trials = trials;
    o.seed = seed;
    o.threads = 0;
    return o;
}

double three_sigma(double p, std::uint64_t n) { return 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(n)); }

} // namespace

TEST(ExactOracles, ClosedForms)
{
    // 1 - (n-1)!/(n-1)^n for k = 1.
    EXPECT_NEAR(oracle::regular_not_sc(1, 3), 0.75, 1e-15);
    EXPECT_NEAR(oracle::regular_not_sc(1, 4), 1.0 - 6.0 / 81.0, 1e-15);
    EXPECT_NEAR(oracle::regular_not_sc(2, 3), 0.0, 1e-15);
}

TEST(EstimateRegular, AgreesWithEnumeration)
{
    for (auto [k, n] : {std::pair<Index, Index>{1, 3}, {1, 4}, {2, 4}}) {
        const double exact = oracle::regular_not_sc(k, n);
        const auto e = estimate_not_sc_regular(k, n, options(8000, k * 10 + n));
        EXPECT_NEAR(e.estimate, exact, three_sigma(exact, 8000)) << "k=" << k << " n=" << n;
    }
}

TEST(EstimateRegular, CompleteDigraphNeverFails)
{
    EXPECT_EQ(estimate_not_sc_regular(5, 6, options(500)).events, 0u);
    EXPECT_THROW(estimate_not_sc_regular(6, 6, options(10)), Error);
}

TEST(EstimateBinomial, AgreesWithEnumeration)
{
    const double exact = oracle::binomial_not_sc(0.5, 3);
    const auto e = estimate_not_sc_binomial(0.5, 3, options(8000, 7));
    EXPECT_NEAR(e.estimate, exact, three_sigma(exact, 8000));
    const double exact4 = oracle::binomial_not_sc(1.0 / 3.0, 4);
    const auto e4 = estimate_not_sc_binomial(1.0 / 3.0, 4, options(8000, 8));
    EXPECT_NEAR(e4.estimate, exact4, three_sigma(exact4, 8000));
}

TEST(EstimateBinomial, Extremes)
{
    EXPECT_EQ(estimate_not_sc_binomial(1.0, 5, options(200)).estimate, 0.0);
    EXPECT_EQ(estimate_not_sc_binomial(0.0, 5, options(200)).estimate, 1.0);
    EXPECT_THROW(estimate_not_sc_binomial(2.0, 5, options(10)), Error);
    EXPECT_THROW(estimate_not_sc_binomial(0.5, 5, options(0)), Error);
}

TEST(Estimate, ThreadIndependent)
{
    auto o = options(4000, 9);
    o.threads = 1;
    const auto a = estimate_not_sc_binomial(0.2, 16, o);
    o.threads = 5;
    const auto b = estimate_not_sc_binomial(0.2, 16, o);
    EXPECT_EQ(a, b);
}

TEST(TrialStream, Layout)
{
    EXPECT_EQ(trial_stream(0, DigraphModel::kRegular, 5), 5u);
    EXPECT_EQ(trial_stream(0, DigraphModel::kBinomial, 5), (1ull << 32) | 5u);
    EXPECT_EQ(trial_stream(3, DigraphModel::kBinomial, 0), 7ull << 32);
}

TEST(Bounds, Examples)
{
    EXPECT_NEAR(graham_pike_limit(0.0), 1.0 - std::exp(-2.0), 1e-15);
    EXPECT_NEAR(graham_pike_limit(0.0), 0.864665, 1e-6);
    EXPECT_LT(graham_pike_limit(40.0), 1e-17);
    EXPECT_NEAR(binomial_bound(16, 4096), 9.16e-4, 0.01 * 9.16e-4);
    EXPECT_NEAR(binomial_bound(16, 4096), 1 - std::exp(-2 * std::exp(std::log(4096.0) - 16.0 * 4096 / 4095)), 1e-15);
}

TEST(Bounds, IdentityWithLimit)
{
    for (double n : {4.0, 16.0, 100.0, 4096.0, 1e6}) {
        for (double c : {-2.0, 0.0, 1.5, 5.0}) {
            const double k = (std::log(n) + c) / n * (n - 1.0);
            EXPECT_NEAR(binomial_bound(k, n), graham_pike_limit(c), 1e-12);
        }
    }
}

TEST(Bounds, MonotoneInK)
{
    for (double n : {4.0, 64.0, 4096.0}) {
        double previous = 1.0;
        for (double k = 0; k < 3 * std::log(n) + 10; k += 0.5) {
            const double b = binomial_bound(k, n);
            EXPECT_LE(b, previous);
            previous = b;
        }
    }
}

TEST(Grid, ReferenceSpec)
{
    const auto spec = GridSpec::reference();
    EXPECT_EQ(spec.k_values.size(), 16u);
    EXPECT_EQ(spec.n_values.front(), 4u);
    EXPECT_EQ(spec.n_values.back(), 4096u);
    EXPECT_EQ(spec.trials, 8000u);
    EXPECT_NO_THROW(spec.validate());
}

TEST(Grid, Validation)
{
    GridSpec spec;
    spec.k_values = {4, 5};
    spec.n_values = {4};
    EXPECT_THROW(spec.validate(), Error);
    spec.n_values = {4, 8};
    EXPECT_NO_THROW(spec.validate());
    spec.k_values = {1, 3};
    spec.trials = 0;
    EXPECT_THROW(spec.validate(), Error);
}

TEST(Grid, CellsAndFlags)
{
    GridSpec spec;
    spec.k_values = {2, 3};
    spec.n_values = {4, 8};
    spec.trials = 2000;
    spec.seed = 11;
    const auto cells = check_conjectures_grid(spec, 0);
    ASSERT_EQ(cells.size(), 4u);
    EXPECT_EQ(cells[0].k, 2u);
    EXPECT_EQ(cells[1].n, 8u);
    for (const auto& c : cells) {
        EXPECT_DOUBLE_EQ(c.p, static_cast<double>(c.k) / (c.n - 1));
        EXPECT_DOUBLE_EQ(c.bound, binomial_bound(c.k, c.n));
        EXPECT_EQ(c.conj1_ok, c.p_reg.estimate <= c.p_bin.ci_high);
        EXPECT_EQ(c.conj2_ok, c.p_bin.estimate <= c.bound + 3 * c.p_bin.sigma());
    }
    // k = n - 1: complete digraph.
    EXPECT_EQ(cells[2].p_reg.estimate, 0.0);
    EXPECT_TRUE(cells[2].conj1_ok);
}

TEST(Grid, SkipsCellsWithKAtLeastN)
{
    GridSpec spec;
    spec.k_values = {3, 4, 5};
    spec.n_values = {4, 8};
    spec.trials = 50;
    const auto cells = check_conjectures_grid(spec, 1);
    ASSERT_EQ(cells.size(), 4u);
    for (const auto& c : cells) EXPECT_LT(c.k, c.n);
    EXPECT_EQ(cells[2].k, 4u);
    EXPECT_EQ(cells[2].n, 8u);
}

TEST(Grid, CsvIsDeterministic)
{
    GridSpec spec;
    spec.k_values = {1, 2};
    spec.n_values = {4, 16};
    spec.trials = 1000;
    spec.seed = 12;
    std::ostringstream a;
    std::ostringstream b;
    write_grid_csv(a, check_conjectures_grid(spec, 1));
    write_grid_csv(b, check_conjectures_grid(spec, 6));
    EXPECT_EQ(a.str(), b.str());
    std::istringstream lines(a.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "model,k,n,p,trials,failures,estimate,ci_low,ci_high,bound,conj1_ok,conj2_ok,low_confidence");
    std::getline(lines, line);
    EXPECT_EQ(line.substr(0, 22), "reg,1,4,0.333333333333");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 7);
}

TEST(Grid, Gnuplot)
{
    GridSpec spec;
    spec.k_values = {1, 2};
    spec.n_values = {4, 8};
    spec.trials = 100;
    std::ostringstream out;
    write_grid_gnuplot(out, check_conjectures_grid(spec, 1));
    const std::string s = out.str();
    EXPECT_EQ(s.rfind("# k n", 0), 0u);
    EXPECT_NE(s.find("\n\n2 4 "), std::string::npos);
}
