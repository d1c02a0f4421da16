// bloomclock command-line driver.
//
//   bloomclock simulate --nodes 8 --m 128 --k 4 --events 5000 --drop 0.2 --seed 7 --out-dir run
//   bloomclock fpr --m 6 --a-sum 7 --b-sum 10 [--montecarlo 1000000]
//
// Exit status: 0 success, 1 invalid configuration or violated precondition
// (including any false negative in a simulation), 2 usage error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bloomclock/bloomclock.hpp"
#include "bloomclock/report.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitUsage = 2;

struct SimulateFlags {
    bloomclock::SimConfig config;
    std::string delay = config.delay.to_string();
    std::size_t history_cap = *config.history_cap;
    std::string out_dir = "bloomclock-run";
};

struct FprFlags {
    std::uint64_t m = 0;
    std::uint64_t a_sum = 0;
    std::uint64_t b_sum = 0;
    std::uint64_t montecarlo = 0;
    std::uint64_t seed = 1;
};

int run_simulate(SimulateFlags& flags) {
    auto& config = flags.config;
    config.delay = bloomclock::DelayModel::parse(flags.delay);
    config.history_cap = flags.history_cap == 0 ? std::nullopt : std::optional<std::size_t>(flags.history_cap);
    config.validate();

    const auto result = bloomclock::run_simulation(config);
    const auto paths = bloomclock::write_run_outputs(flags.out_dir, config, result);
    const auto& m = result.metrics;

    std::printf("events %llu pairs %llu concurrent %llu comparable %llu\n",
                static_cast<unsigned long long>(m.events), static_cast<unsigned long long>(m.pairs),
                static_cast<unsigned long long>(m.concurrent_pairs),
                static_cast<unsigned long long>(m.bloom_comparable_pairs));
    std::printf("false_positives %llu empirical_fp_rate %.6f mean_predicted_fp %.6f\n",
                static_cast<unsigned long long>(m.false_positives), m.empirical_fp_rate(), m.mean_predicted_fp());
    std::printf("false_negatives %llu\n", static_cast<unsigned long long>(m.false_negatives));
    std::printf("metrics %s\n", paths.metrics.string().c_str());

    if (m.false_negatives != 0) {
        std::fprintf(stderr, "error: %llu false negatives; the bloom clock must never miss a causal order\n",
                     static_cast<unsigned long long>(m.false_negatives));
        return kExitConfig;
    }
    return 0;
}

int run_fpr(const FprFlags& flags) {
    const double fp = bloomclock::fp_rate_from_sums(flags.m, flags.a_sum, flags.b_sum);
    std::printf("%.4f\n", fp);
    if (flags.montecarlo > 0) {
        const auto est = bloomclock::montecarlo_overlap(flags.m, flags.a_sum, flags.b_sum, flags.montecarlo, flags.seed);
        std::printf("montecarlo %.4f stderr %.4f trials %llu\n", est.mean, est.std_error,
                    static_cast<unsigned long long>(est.trials));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bloom clock simulation and false-positive tools"};
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Run a simulated broadcast network and write metrics");
    simulate->add_option("--nodes", sim.config.n_nodes, "Number of nodes")->check(CLI::PositiveNumber);
    simulate->add_option("--m", sim.config.m, "Bloom clock counters")->check(CLI::PositiveNumber);
    simulate->add_option("--k", sim.config.k, "Hash functions per event")->check(CLI::PositiveNumber);
    simulate->add_option("--events", sim.config.n_events, "Internal events to schedule");
    simulate->add_option("--drop", sim.config.drop_rate, "Per-recipient drop probability");
    simulate->add_option("--delay", sim.delay, "Delay in ticks: N (fixed) or LO:HI (uniform)");
    simulate->add_option("--seed", sim.config.seed, "Seed for scheduling, drops and hashing");
    simulate->add_option("--fp-threshold", sim.config.fp_threshold, "Accept a comparable pair when fp <= threshold");
    simulate->add_option("--history-cap", sim.history_cap, "Per-node history length, 0 = unbounded");
    simulate->add_option("--pairs-cap", sim.config.pair_sample_cap, "Maximum rows written to pairs.csv");
    simulate->add_option("--out-dir", sim.out_dir, "Directory for manifest.json, metrics.json, pairs.csv");

    FprFlags fpr;
    auto* fpr_cmd = app.add_subcommand("fpr", "Bloom clock false-positive rate for two increment sums");
    fpr_cmd->add_option("--m", fpr.m, "Bloom clock counters")->required()->check(CLI::PositiveNumber);
    fpr_cmd->add_option("--a-sum", fpr.a_sum, "Increments in the dominated clock")->required();
    fpr_cmd->add_option("--b-sum", fpr.b_sum, "Increments in the dominating clock")->required();
    fpr_cmd->add_option("--montecarlo", fpr.montecarlo, "Also estimate overlap with this many trials");
    fpr_cmd->add_option("--seed", fpr.seed, "Monte Carlo seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitUsage;
    }

    try {
        if (*simulate) return run_simulate(sim);
        if (*fpr_cmd) return run_fpr(fpr);
    } catch (const bloomclock::PreconditionViolation& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const bloomclock::InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitUsage;
}
