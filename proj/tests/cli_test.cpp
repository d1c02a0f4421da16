#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <json.hpp>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(BLOOMCLOCK_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("bloomclock_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

TEST(Cli, FprWorkedExample) {
    const auto r = cli("fpr --m 6 --a-sum 7 --b-sum 10");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "0.2914\n");
}

TEST(Cli, FprZeroClock) {
    const auto r = cli("fpr --m 6 --a-sum 0 --b-sum 10");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "1.0000\n");
}

TEST(Cli, FprRejectsReversedSums) {
    EXPECT_EQ(cli("fpr --m 6 --a-sum 10 --b-sum 7").status, 1);
}

TEST(Cli, FprWithMonteCarlo) {
    const auto r = cli("fpr --m 2 --a-sum 2 --b-sum 3 --montecarlo 20000 --seed 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("0.", 0), 0u);
    EXPECT_NE(r.out.find("montecarlo 0.6"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli("").status, 2);
    EXPECT_EQ(cli("fpr --m 6").status, 2);
    EXPECT_EQ(cli("simulate --nodes notanumber").status, 2);
    EXPECT_EQ(cli("bogus").status, 2);
}

TEST(Cli, InvalidConfigExitsOne) {
    const auto dir = scratch("invalid");
    EXPECT_EQ(cli("simulate --drop 1.5 --out-dir " + dir.string()).status, 1);
    EXPECT_EQ(cli("simulate --delay 5:1 --out-dir " + dir.string()).status, 1);
    std::filesystem::remove_all(dir);
}

TEST(Cli, SimulateWritesOutputs) {
    const auto dir = scratch("simulate");
    const auto r = cli("simulate --nodes 8 --m 128 --k 4 --events 600 --drop 0.2 --seed 7 --out-dir " + dir.string());
    ASSERT_EQ(r.status, 0) << r.out;
    const auto metrics = nlohmann::json::parse(slurp(dir / "metrics.json"));
    EXPECT_EQ(metrics.at("false_negatives"), 0);
    EXPECT_EQ(metrics.at("events"), 600);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest.at("config").at("n_nodes"), 8);
    EXPECT_EQ(slurp(dir / "pairs.csv").rfind("t_i_a,t_i_b,ground_truth,bloom_verdict,delta_sum,fp_predicted,accepted\n", 0),
              0u);
    std::filesystem::remove_all(dir);
}

TEST(Cli, SimulateEmptyRun) {
    const auto dir = scratch("empty");
    ASSERT_EQ(cli("simulate --nodes 2 --events 0 --out-dir " + dir.string()).status, 0);
    const auto metrics = nlohmann::json::parse(slurp(dir / "metrics.json"));
    EXPECT_EQ(metrics.at("pairs"), 0);
    std::filesystem::remove_all(dir);
}

TEST(Cli, SimulateIsByteForByteReproducible) {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    const std::string flags = "simulate --nodes 5 --m 64 --k 3 --events 300 --drop 0.3 --delay 1:6 --seed 11 --out-dir ";
    const auto ra = cli(flags + a.string());
    const auto rb = cli(flags + b.string());
    ASSERT_EQ(ra.status, 0);
    ASSERT_EQ(rb.status, 0);
    for (const char* f : {"manifest.json", "metrics.json", "pairs.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

} // namespace
