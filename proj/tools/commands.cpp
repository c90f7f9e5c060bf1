#include "commands.hpp"

#include "ringlab/adversary.hpp"
#include "ringlab/conjecture.hpp"
#include "ringlab/core.hpp"
#include "ringlab/entropy.hpp"
#include "ringlab/error.hpp"
#include "ringlab/io.hpp"
#include "ringlab/recommend.hpp"
#include "ringlab/samplers.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace ringlab::cli {

namespace {

// Flag combinations rejected after CLI11 has parsed them.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned effective_threads(unsigned flag)
{
    const char* env = std::getenv(kThreadsEnv);
    if (env == nullptr || *env == '\0') return flag;
    const std::string_view s(env);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw UsageError(fmt::format("{} must be a non-negative integer, got '{}'", kThreadsEnv, s));
    }
    return value;
}

void print_header(std::ostream& out, std::string_view command, std::uint64_t seed)
{
    fmt::print(out, "# ringlab {}\n# seed {}\n", command, seed);
}

void print_estimate(std::ostream& out, std::string_view label, const EstimateResult& e)
{
    fmt::print(out, "{} {:.12g} ci95 [{:.12g}, {:.12g}] sigma {:.12g} ({}/{})\n", label, e.estimate, e.ci_low,
               e.ci_high, e.sigma(), e.events, e.trials);
}

bool is_graph_error(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::kNotATransactionGraph:
    case ErrorKind::kEmptyRing:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kDuplicateEdge:
    case ErrorKind::kMatchingNotMaximum: return true;
    default: return false;
    }
}

void report_error(std::ostream& err, const Error& e)
{
    const std::string_view name = to_string(e.kind());
    const std::string_view what = e.what();
    if (what.substr(0, name.size()) == name) {
        fmt::print(err, "error: {}\n", what);
    } else {
        fmt::print(err, "error: {}: {}\n", name, what);
    }
}

bool is_power_of_two(Index v) { return v != 0 && (v & (v - 1)) == 0; }

// ---------------------------------------------------------------- core

struct CoreArgs {
    std::string input;
    std::string format = "text";
};

int cmd_core(const CoreArgs& args, std::ostream& out, std::ostream& err)
{
    std::ifstream file;
    std::istream* in = &std::cin;
    if (args.input != "-") {
        file.open(args.input, std::ios::binary);
        if (!file) {
            fmt::print(err, "error: cannot open '{}'\n", args.input);
            return kExitUsage;
        }
        in = &file;
    }

    std::optional<TransactionGraph> graph;
    try {
        graph = read_transaction_graph(*in);
    } catch (const Error& e) {
        report_error(err, e);
        return is_graph_error(e.kind()) ? kExitInvalidGraph : kExitUsage;
    }

    const CoreReport report = core_report(*graph);
    std::vector<bool> deanonymised(graph->n_rings(), false);
    for (const Edge& e : report.deanonymised_rings) deanonymised[e.ring] = true;

    if (args.format == "csv") {
        out << "ring_index,core_degree,deanonymised\n";
        for (Index r = 0; r < graph->n_rings(); ++r) {
            fmt::print(out, "{},{},{}\n", r, report.per_ring_core_degree[r], deanonymised[r]);
        }
        return kExitOk;
    }

    print_header(out, "core", 0);
    fmt::print(out, "# input {}\n", args.input);
    fmt::print(out, "users {}\nrings {}\nedges {}\n", graph->n_users(), graph->n_rings(), graph->n_edges());
    fmt::print(out, "core_edges {}\n", report.core_edges.size());
    fmt::print(out, "removed_edges {}\n", report.removed_edges.size());
    for (const Edge& e : report.removed_edges) fmt::print(out, "  removed u{} r{}\n", e.user, e.ring);
    fmt::print(out, "deanonymised_rings {}\n", report.deanonymised_rings.size());
    for (const Edge& e : report.deanonymised_rings) fmt::print(out, "  ring r{} signer u{}\n", e.ring, e.user);
    fmt::print(out, "core_equal {}\n", report.removed_edges.empty());
    return kExitOk;
}

// ---------------------------------------------------------- conjecture

struct ConjectureArgs {
    Index k_min = 1;
    Index k_max = 16;
    Index n_min = 4;
    Index n_max = 4096;
    std::uint64_t trials = 8000;
    std::uint64_t seed = 0;
    std::string out_path = "conjecture.csv";
    std::string gnuplot_path;
    unsigned threads = 0;
};

int cmd_conjecture(const ConjectureArgs& args, std::ostream& out)
{
    if (args.k_min == 0 || args.k_min > args.k_max) throw UsageError("need 1 <= k-min <= k-max");
    if (!is_power_of_two(args.n_min) || !is_power_of_two(args.n_max) || args.n_min > args.n_max) {
        throw UsageError("n-min and n-max must be powers of two with n-min <= n-max");
    }
    if (args.k_min >= args.n_max) throw UsageError("k-min must be below n-max");
    if (args.trials == 0) throw UsageError("trials must be at least 1");

    GridSpec spec;
    for (Index k = args.k_min; k <= args.k_max; ++k) spec.k_values.push_back(k);
    for (std::uint64_t n = args.n_min; n <= args.n_max; n *= 2) spec.n_values.push_back(static_cast<Index>(n));
    spec.trials = args.trials;
    spec.seed = args.seed;

    const auto cells = check_conjectures_grid(spec, effective_threads(args.threads));

    std::ofstream csv(args.out_path, std::ios::binary);
    if (!csv) throw UsageError(fmt::format("cannot write '{}'", args.out_path));
    write_grid_csv(csv, cells);
    if (!args.gnuplot_path.empty()) {
        std::ofstream plot(args.gnuplot_path, std::ios::binary);
        if (!plot) throw UsageError(fmt::format("cannot write '{}'", args.gnuplot_path));
        write_grid_gnuplot(plot, cells);
    }

    print_header(out, "conjecture", args.seed);
    fmt::print(out, "# grid k {}..{} n {}..{} trials {}\n", args.k_min, args.k_max, args.n_min, args.n_max,
               args.trials);
    const auto conj1_fail = std::count_if(cells.begin(), cells.end(), [](const GridCell& c) { return !c.conj1_ok; });
    const auto conj2_fail = std::count_if(cells.begin(), cells.end(), [](const GridCell& c) { return !c.conj2_ok; });
    fmt::print(out, "cells {}\nconj1_failures {}\nconj2_failures {}\n", cells.size(), conj1_fail, conj2_fail);
    for (const GridCell& c : cells) {
        if (c.conj1_ok && c.conj2_ok) continue;
        fmt::print(out, "  failing k {} n {} p_reg {:.6g} p_bin {:.6g} bound {:.6g}{}{}\n", c.k, c.n,
                   c.p_reg.estimate, c.p_bin.estimate, c.bound, c.conj1_ok ? "" : " conj1", c.conj2_ok ? "" : " conj2");
    }
    fmt::print(out, "csv {}\n", args.out_path);
    return kExitOk;
}

// ------------------------------------------------------------ simulate

struct SimulateArgs {
    Index users = 0;
    std::optional<Index> chunk_size;
    std::optional<Index> k;
    std::optional<double> p;
    std::string adversary = "trivial";
    std::uint64_t trials = 10000;
    std::optional<double> beta;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    Index cap = kDefaultBruteForceCap;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out)
{
    if (args.k.has_value() == args.p.has_value()) throw UsageError("give exactly one of --k and --p");
    const Index chunk_size = args.chunk_size.value_or(args.users);
    if (args.users == 0 || chunk_size == 0 || args.users % chunk_size != 0) {
        throw UsageError("chunk-size must be positive and divide users");
    }
    if (args.trials == 0) throw UsageError("trials must be at least 1");
    const auto adversary = parse_adversary(args.adversary);
    if (!adversary) throw UsageError(fmt::format("unknown adversary '{}'", args.adversary));
    if (*adversary == AdversaryKind::kMatchingCount && chunk_size > args.cap) {
        throw UsageError(fmt::format("matching_count enumerates whole chunks; chunk size {} exceeds cap {}",
                                     chunk_size, args.cap));
    }

    Partition partition = Partition::equal_chunks(args.users, chunk_size);
    const SamplerConfig config = args.k ? SamplerConfig::regular(std::move(partition), *args.k)
                                        : SamplerConfig::binomial(std::move(partition), *args.p);

    CampaignOptions options;
    options.trials = args.trials;
    options.seed = args.seed;
    options.threads = effective_threads(args.threads);
    options.cap = args.cap;
    const double beta = args.beta.value_or(0.0);
    if (beta != 0.0) {
        options.marble = BlackMarbleConfig{beta};
        validate(*options.marble);
    } else if (args.beta) {
        validate(BlackMarbleConfig{beta});
    }

    const CampaignResult result = run_campaign(config, *adversary, options);

    print_header(out, "simulate", args.seed);
    if (args.k) {
        fmt::print(out, "sampler regular k {}\n", *args.k);
    } else {
        fmt::print(out, "sampler binomial p {:.12g}\n", *args.p);
    }
    fmt::print(out, "users {} chunk_size {} chunks {}\n", args.users, chunk_size, args.users / chunk_size);
    fmt::print(out, "adversary {}\nbeta {:.12g}\ntrials {}\n", to_string(*adversary), beta, args.trials);
    print_estimate(out, "success", result.success);
    print_estimate(out, "core_mismatch", result.core_mismatch);
    return kExitOk;
}

// ----------------------------------------------------------- recommend

struct RecommendArgs {
    std::string users;
    std::optional<double> beta;
    std::optional<std::string> chunks;
    std::optional<std::string> chunk_size;
    bool csv = false;
};

double parse_decimal(const std::string& flag, const std::string& text)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw UsageError(fmt::format("{} must be a decimal integer, got '{}'", flag, text));
    }
    // Digits only, so strtod cannot fail; values above 2^53 lose low digits,
    // which is irrelevant for their logarithm.
    return std::strtod(text.c_str(), nullptr);
}

std::string reduced_fraction(std::int64_t num, std::int64_t den)
{
    const std::int64_t g = std::gcd(num, den);
    return fmt::format("{}/{}", num / g, den / g);
}

int cmd_recommend(const RecommendArgs& args, std::ostream& out)
{
    const double users = parse_decimal("--users", args.users);
    std::optional<double> chunks;
    std::optional<double> chunk_size;
    if (args.chunks) chunks = parse_decimal("--chunks", *args.chunks);
    if (args.chunk_size) chunk_size = parse_decimal("--chunk-size", *args.chunk_size);
    if (chunks && !chunk_size) chunk_size = users / *chunks;
    if (chunk_size && !chunks) chunks = users / *chunk_size;

    const Recommendation rec = recommend(users, args.beta.value_or(0.0), chunks, chunk_size);
    const std::string security = reduced_fraction(2, rec.k_closed_form + 1);

    print_header(out, "recommend", 0);
    fmt::print(out, "users {}\n", args.users);
    if (rec.beta > 0.0) {
        fmt::print(out, "beta {:.12g}\n", rec.beta);
        fmt::print(out, "k_closed_form {} (heuristic, black marbles)\n", rec.k_closed_form);
    } else {
        fmt::print(out, "k_closed_form {}\n", rec.k_closed_form);
    }
    fmt::print(out, "security {} ({:.12g})\n", security, rec.target_security);
    if (chunks && chunk_size) {
        fmt::print(out, "chunks {:.12g} chunk_size {:.12g}\n", *chunks, *chunk_size);
        if (rec.k_numeric) {
            fmt::print(out, "k_numeric {}\n", *rec.k_numeric);
        } else {
            fmt::print(out, "k_numeric none (no k below the chunk size)\n");
        }
    }
    if (args.csv) {
        fmt::print(out, "users,beta,chunks,chunk_size,k_closed_form,k_numeric,security\n");
        fmt::print(out, "{},{:.12g},{},{},{},{},{:.12g}\n", args.users, rec.beta,
                   chunks ? fmt::format("{:.12g}", *chunks) : "", chunk_size ? fmt::format("{:.12g}", *chunk_size) : "",
                   rec.k_closed_form, rec.k_numeric ? std::to_string(*rec.k_numeric) : "", rec.target_security);
    }
    return kExitOk;
}

// ------------------------------------------------------------- entropy

struct EntropyArgs {
    Index chunk_size = 0;
    Index chunks = 1;
    std::optional<Index> k;
    std::optional<double> p;
    std::string weights_path;
    bool exact = false;
};

int cmd_entropy(const EntropyArgs& args, std::ostream& out)
{
    if (args.k.has_value() == args.p.has_value()) throw UsageError("give exactly one of --k and --p");
    if (args.chunk_size == 0 || args.chunks == 0) throw UsageError("chunk-size and chunks must be positive");
    const auto n_users = static_cast<std::uint64_t>(args.chunk_size) * args.chunks;
    if (n_users > 0xFFFFFFFFu) throw UsageError("too many users");

    Partition partition = Partition::equal_chunks(static_cast<Index>(n_users), args.chunk_size);
    const SamplerConfig config = args.k ? SamplerConfig::regular(std::move(partition), *args.k)
                                        : SamplerConfig::binomial(std::move(partition), *args.p);

    SignerDistribution dist = SignerDistribution::uniform(static_cast<Index>(n_users));
    if (!args.weights_path.empty()) {
        std::ifstream file(args.weights_path, std::ios::binary);
        if (!file) throw UsageError(fmt::format("cannot open '{}'", args.weights_path));
        std::vector<double> weights = parse_weights(file);
        if (weights.size() != n_users) {
            throw UsageError(fmt::format("weights file has {} entries, expected {}", weights.size(), n_users));
        }
        dist = SignerDistribution::create(std::move(weights));
    }
    const DistributionDeviation dev = DistributionDeviation::compute(config.partition(), dist);

    const Index cap = args.k ? kRegularExactCap : kBinomialExactCap;
    std::optional<double> exact;
    if (args.chunk_size <= cap) {
        exact = anonymity_exact(config, dist);
    } else if (args.exact) {
        throw UsageError(fmt::format("exact computation is capped at chunk size {}", cap));
    }

    std::optional<Index> bound_k;
    if (args.k) {
        if (*args.k >= 1) bound_k = *args.k;
    } else {
        // Largest integer strictly below p|C|.
        const double pc = *args.p * static_cast<double>(args.chunk_size);
        const double below = std::ceil(pc) - 1.0;
        if (below >= 1.0) bound_k = static_cast<Index>(below);
    }

    print_header(out, "entropy", 0);
    if (args.k) {
        fmt::print(out, "sampler regular k {}\n", *args.k);
    } else {
        fmt::print(out, "sampler binomial p {:.12g}\n", *args.p);
    }
    fmt::print(out, "chunks {} chunk_size {}\n", args.chunks, args.chunk_size);
    fmt::print(out, "distribution {}\n", args.weights_path.empty() ? "uniform" : args.weights_path);
    fmt::print(out, "eps_P {:.12g}\n", dev.total_eps);
    if (exact) fmt::print(out, "alpha_exact {:.12g} nats\n", *exact);
    if (bound_k) {
        const double bound = args.k ? anonymity_bound_regular(*bound_k, dev)
                                    : anonymity_bound_binomial(*bound_k, dev, &config);
        fmt::print(out, "alpha_bound {:.12g} nats (k {})\n", bound, *bound_k);
    } else {
        fmt::print(out, "alpha_bound unavailable (needs k >= 1)\n");
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Graph-based deanonymisation analysis for ring samplers", "ringlab"};
    app.require_subcommand(1);

    CoreArgs core_args;
    auto* core_cmd = app.add_subcommand("core", "Dulmage-Mendelsohn core report of an edge-list file");
    core_cmd->add_option("input", core_args.input, "Edge-list file, '-' for stdin")->required();
    core_cmd->add_option("--format", core_args.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    ConjectureArgs conj_args;
    auto* conj_cmd = app.add_subcommand("conjecture", "Monte Carlo grid for the strong-connectivity conjectures");
    conj_cmd->add_option("--k-min", conj_args.k_min)->capture_default_str();
    conj_cmd->add_option("--k-max", conj_args.k_max)->capture_default_str();
    conj_cmd->add_option("--n-min", conj_args.n_min, "Power of two")->capture_default_str();
    conj_cmd->add_option("--n-max", conj_args.n_max, "Power of two")->capture_default_str();
    conj_cmd->add_option("--trials", conj_args.trials)->capture_default_str();
    conj_cmd->add_option("--seed", conj_args.seed)->capture_default_str();
    conj_cmd->add_option("--out", conj_args.out_path, "CSV output path")->capture_default_str();
    conj_cmd->add_option("--gnuplot", conj_args.gnuplot_path, "Optional gnuplot table path");
    conj_cmd->add_option("--threads", conj_args.threads, "0 = all cores")->capture_default_str();

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Security experiment campaign with equal chunks");
    sim_cmd->add_option("--users", sim_args.users)->required();
    sim_cmd->add_option("--chunk-size", sim_args.chunk_size, "Defaults to --users");
    auto* sim_k = sim_cmd->add_option("--k", sim_args.k, "Regular sampler decoys");
    auto* sim_p = sim_cmd->add_option("--p", sim_args.p, "Binomial sampler probability");
    sim_k->excludes(sim_p);
    sim_cmd->add_option("--adversary", sim_args.adversary, "trivial, core or matching_count")
        ->capture_default_str();
    sim_cmd->add_option("--trials", sim_args.trials)->capture_default_str();
    sim_cmd->add_option("--beta", sim_args.beta, "Black-marble fraction per chunk");
    sim_cmd->add_option("--seed", sim_args.seed)->capture_default_str();
    sim_cmd->add_option("--threads", sim_args.threads, "0 = all cores")->capture_default_str();
    sim_cmd->add_option("--cap", sim_args.cap, "User cap for matching enumeration")->capture_default_str();

    RecommendArgs rec_args;
    auto* rec_cmd = app.add_subcommand("recommend", "Decoy count for a user population");
    rec_cmd->add_option("--users", rec_args.users, "Decimal user count")->required();
    rec_cmd->add_option("--beta", rec_args.beta, "Black-marble fraction (heuristic)");
    rec_cmd->add_option("--chunks", rec_args.chunks);
    rec_cmd->add_option("--chunk-size", rec_args.chunk_size);
    rec_cmd->add_flag("--csv", rec_args.csv, "Also print a CSV row");

    EntropyArgs ent_args;
    auto* ent_cmd = app.add_subcommand("entropy", "Min-entropy anonymity of a partitioning sampler");
    ent_cmd->add_option("--chunk-size", ent_args.chunk_size)->required();
    ent_cmd->add_option("--chunks", ent_args.chunks)->capture_default_str();
    auto* ent_k = ent_cmd->add_option("--k", ent_args.k, "Regular sampler decoys");
    auto* ent_p = ent_cmd->add_option("--p", ent_args.p, "Binomial sampler probability");
    ent_k->excludes(ent_p);
    ent_cmd->add_option("--weights", ent_args.weights_path, "One signer probability per line");
    ent_cmd->add_flag("--exact", ent_args.exact, "Fail unless the exact value is computable");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (core_cmd->parsed()) return cmd_core(core_args, out, err);
        if (conj_cmd->parsed()) return cmd_conjecture(conj_args, out);
        if (sim_cmd->parsed()) return cmd_simulate(sim_args, out);
        if (rec_cmd->parsed()) return cmd_recommend(rec_args, out);
        if (ent_cmd->parsed()) return cmd_entropy(ent_args, out);
    } catch (const UsageError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        report_error(err, e);
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace ringlab::cli
