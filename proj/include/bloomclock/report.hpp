#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include <json.hpp>

#include "bloomclock/simulator.hpp"
#include "bloomclock/verdict.hpp"

namespace bloomclock {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kMetricsSchemaVersion = 1;

[[nodiscard]] inline nlohmann::ordered_json config_json(const SimConfig& config) {
    nlohmann::ordered_json j;
    j["n_nodes"] = config.n_nodes;
    j["m"] = config.m;
    j["k"] = config.k;
    j["n_events"] = config.n_events;
    j["drop_rate"] = config.drop_rate;
    j["delay"] = config.delay.to_string();
    j["seed"] = config.seed;
    j["fp_threshold"] = config.fp_threshold;
    j["history_cap"] = config.history_cap ? nlohmann::ordered_json(*config.history_cap) : nlohmann::ordered_json();
    j["pair_sample_cap"] = config.pair_sample_cap;
    return j;
}

// Reverse of config_json; missing keys keep their defaults.
[[nodiscard]] inline SimConfig config_from_json(const nlohmann::ordered_json& j) {
    SimConfig c;
    c.n_nodes = j.value("n_nodes", c.n_nodes);
    c.m = j.value("m", c.m);
    c.k = j.value("k", c.k);
    c.n_events = j.value("n_events", c.n_events);
    c.drop_rate = j.value("drop_rate", c.drop_rate);
    if (j.contains("delay")) c.delay = DelayModel::parse(j.at("delay").get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.fp_threshold = j.value("fp_threshold", c.fp_threshold);
    if (j.contains("history_cap"))
        c.history_cap = j.at("history_cap").is_null() ? std::nullopt
                                                      : std::optional<std::size_t>(j.at("history_cap").get<std::size_t>());
    c.pair_sample_cap = j.value("pair_sample_cap", c.pair_sample_cap);
    return c;
}

[[nodiscard]] inline nlohmann::ordered_json metrics_json(const SimMetrics& m, const SimConfig& config) {
    constexpr CausalVerdict kAll[] = {CausalVerdict::Before, CausalVerdict::After, CausalVerdict::Equal,
                                      CausalVerdict::Concurrent};
    nlohmann::ordered_json j;
    j["schema_version"] = kMetricsSchemaVersion;
    j["events"] = m.events;
    j["pairs"] = m.pairs;

    nlohmann::ordered_json confusion;
    for (auto truth : kAll) {
        nlohmann::ordered_json row;
        for (auto bloom : kAll) row[std::string(to_string(bloom))] = m.count(truth, bloom);
        confusion[std::string(to_string(truth))] = row;
    }
    j["confusion_truth_by_bloom"] = confusion;

    j["concurrent_pairs"] = m.concurrent_pairs;
    j["bloom_comparable_pairs"] = m.bloom_comparable_pairs;
    j["false_positives"] = m.false_positives;
    j["false_negatives"] = m.false_negatives;
    j["empirical_fp_rate"] = m.empirical_fp_rate();
    j["concurrent_misordered_rate"] = m.concurrent_misordered_rate();
    j["mean_predicted_fp"] = m.mean_predicted_fp();
    j["fp_threshold"] = config.fp_threshold;
    j["accepted_pairs"] = m.accepted_pairs;
    j["accepted_false_positives"] = m.accepted_false_positives;

    auto buckets = nlohmann::ordered_json::array();
    for (const auto& b : m.buckets) {
        if (b.comparable == 0) continue;
        buckets.push_back({{"delta_lo", b.delta_lo},
                           {"delta_hi", b.delta_hi},
                           {"comparable", b.comparable},
                           {"false_positives", b.false_positives},
                           {"empirical_fp_rate", b.empirical_fp_rate()},
                           {"mean_predicted_fp", b.mean_predicted_fp()}});
    }
    j["delta_buckets"] = buckets;

    j["messages"] = {{"sent", m.messages_sent}, {"dropped", m.messages_dropped}};
    j["merge_detections"] = m.merge_detections;
    j["bytes_per_timestamp"] = {{"bloom_mean", m.bloom_bytes_per_timestamp()},
                                {"bloom_min", m.bloom_bytes_min},
                                {"bloom_max", m.bloom_bytes_max},
                                {"vector_mean", m.vector_bytes_per_timestamp()},
                                {"vector_min", m.vector_bytes_min},
                                {"vector_max", m.vector_bytes_max}};
    return j;
}

[[nodiscard]] inline nlohmann::ordered_json manifest_json(const SimConfig& config, const std::string& metrics_path,
                                                          const std::string& pairs_path) {
    nlohmann::ordered_json j;
    j["tool"] = "bloomclock";
    j["version"] = kVersion;
    j["seed"] = config.seed;
    j["config"] = config_json(config);
    j["outputs"] = {{"metrics", metrics_path}, {"pairs", pairs_path}};
    return j;
}

inline constexpr const char* kPairsCsvHeader =
    "t_i_a,t_i_b,ground_truth,bloom_verdict,delta_sum,fp_predicted,accepted";

inline void write_pairs_csv(std::ostream& os, std::span<const PairSample> samples) {
    os << kPairsCsvHeader << '\n';
    char fp[32];
    for (const auto& s : samples) {
        os << s.t_a << ',' << s.t_b << ',' << to_string(s.truth) << ',' << to_string(s.bloom) << ',' << s.delta << ',';
        if (s.fp_predicted) {
            std::snprintf(fp, sizeof fp, "%.10f", *s.fp_predicted);
            os << fp;
        }
        os << ',';
        if (s.accepted) os << (*s.accepted ? "true" : "false");
        os << '\n';
    }
}

// Writes to a sibling temp file, then renames over the target.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

struct RunManifest {
    std::filesystem::path manifest;
    std::filesystem::path metrics;
    std::filesystem::path pairs;
};

// manifest.json first, then pairs.csv and metrics.json, each atomically.
inline RunManifest write_run_outputs(const std::filesystem::path& out_dir, const SimConfig& config,
                                     const SimResult& result) {
    std::filesystem::create_directories(out_dir);
    RunManifest paths{out_dir / "manifest.json", out_dir / "metrics.json", out_dir / "pairs.csv"};
    write_file_atomically(paths.manifest, manifest_json(config, "metrics.json", "pairs.csv").dump(2) + "\n");
    std::ostringstream csv;
    write_pairs_csv(csv, result.pair_samples);
    write_file_atomically(paths.pairs, csv.str());
    write_file_atomically(paths.metrics, metrics_json(result.metrics, config).dump(2) + "\n");
    return paths;
}

} // namespace bloomclock
