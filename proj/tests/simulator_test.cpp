#include <gtest/gtest.h>

#include "bloomclock/simulator.hpp"
#include "support/oracles.hpp"

namespace bloomclock {
namespace {

using testing::kA;
using testing::kB;
using testing::kC;
using testing::kD;
using testing::kE;

SimConfig small_config(std::uint32_t nodes, std::uint64_t events, double drop, std::uint64_t seed) {
    SimConfig c;
    c.n_nodes = nodes;
    c.m = 32;
    c.k = 3;
    c.n_events = events;
    c.drop_rate = drop;
    c.seed = seed;
    return c;
}

TEST(Simulator, TwoNodesOneEventAdoptsSenderClock) {
    SimConfig c = small_config(2, 1, 0.0, 3);
    const auto result = run_simulation(c);
    ASSERT_EQ(result.events.size(), 1u);
    const auto& emitted = result.events[0].bloom;
    EXPECT_EQ(compare(result.final_clocks[1], emitted), CausalVerdict::Equal);
    EXPECT_EQ(result.final_clocks[result.events[0].origin.value], emitted);
    EXPECT_EQ(result.metrics.pairs, 0u);
}

TEST(Simulator, ZeroEventsGivesEmptyMetrics) {
    const auto result = run_simulation(small_config(2, 0, 0.0, 3));
    EXPECT_TRUE(result.events.empty());
    EXPECT_EQ(result.metrics.pairs, 0u);
    EXPECT_EQ(result.metrics.false_negatives, 0u);
}

TEST(Simulator, FiveNodeReplayReproducesNarratedStates) {
    const auto script = testing::five_node_script();
    const auto net = replay(testing::kFiveNodeFamily, 5, script);
    const auto& ev = net.events();
    ASSERT_EQ(ev.size(), 4u);

    EXPECT_EQ(to_string(ev[0].bloom), "[0,1,0,0,1,0,0,0]");
    EXPECT_EQ(to_string(ev[1].bloom), "[1,2,0,0,1,0,0,0]");
    EXPECT_EQ(to_string(ev[2].bloom), "[0,2,0,0,1,0,1,0]");
    EXPECT_EQ(to_string(ev[3].bloom), "[1,2,1,0,1,0,2,0]");

    // Up to t2 the histories of A, B and E agree.
    auto prefix = [&](NodeId n) {
        std::vector<std::string> out;
        for (const auto& e : net.history(n).entries())
            if (out.size() < 3) out.push_back(to_string(e.clock));
        return out;
    };
    const std::vector<std::string> shared{"[0,0,0,0,0,0,0,0]", "[0,1,0,0,1,0,0,0]", "[1,2,0,0,1,0,0,0]"};
    EXPECT_EQ(prefix(kA), shared);
    EXPECT_EQ(prefix(kB), shared);
    EXPECT_EQ(prefix(kE), shared);

    // Subtracting t1 from t2 recovers t2's hashes at each of them.
    for (auto n : {kA, kB, kE}) {
        const auto& h = net.history(n).entries();
        EXPECT_TRUE(provenance_check(h[1].clock, h[2].clock, EventId("t2-event")));
    }

    // C missed t1 and t2; D missed t2.
    EXPECT_EQ(to_string(net.history(kC).entries()[1].clock), "[0,2,0,0,1,0,1,0]");
    EXPECT_EQ(to_string(net.history(kD).entries()[1].clock), "[0,1,0,0,1,0,0,0]");

    // E at t2 against D's t3 clock.
    const auto e_at_t2 = net.history(kE).entries()[2].clock;
    EXPECT_EQ(compare(ev[2].bloom, e_at_t2), CausalVerdict::Concurrent);
    EXPECT_EQ(to_string(net.history(kE).entries()[3].clock), "[1,2,0,0,1,0,1,0]");

    // t1 precedes everything; t2 and t3 are concurrent; t4 follows all.
    EXPECT_EQ(vc_compare(ev[0].vector, ev[1].vector), CausalVerdict::Before);
    EXPECT_EQ(vc_compare(ev[1].vector, ev[2].vector), CausalVerdict::Concurrent);
    EXPECT_EQ(vc_compare(ev[2].vector, ev[3].vector), CausalVerdict::Before);
    EXPECT_EQ(compare(ev[1].bloom, ev[2].bloom), CausalVerdict::Concurrent);
    EXPECT_GE(net.merge_detections(), 1u);
}

TEST(Simulator, AllMessagesDroppedMakesCrossNodePairsConcurrent) {
    const auto result = run_simulation(small_config(3, 30, 1.0, 9));
    ASSERT_EQ(result.events.size(), 30u);
    EXPECT_EQ(result.metrics.messages_dropped, result.metrics.messages_sent);
    EXPECT_EQ(result.metrics.false_negatives, 0u);
    const testing::CausalDag dag(result.traces, result.events.size());
    for (const auto& a : result.events) {
        for (const auto& b : result.events) {
            if (a.t >= b.t) continue;
            const auto truth = vc_compare(a.vector, b.vector);
            ASSERT_EQ(truth, dag.verdict(a.t, b.t));
            if (a.origin != b.origin) {
                ASSERT_EQ(truth, CausalVerdict::Concurrent);
            } else {
                ASSERT_EQ(truth, CausalVerdict::Before);
            }
        }
    }
}

TEST(Simulator, VectorClockAgreesWithTraceDag) {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto result = run_simulation(small_config(4, 120, 0.3, seed));
        const testing::CausalDag dag(result.traces, result.events.size());
        for (std::size_t i = 0; i < result.events.size(); ++i)
            for (std::size_t j = 0; j < result.events.size(); ++j)
                ASSERT_EQ(vc_compare(result.events[i].vector, result.events[j].vector),
                          dag.verdict(result.events[i].t, result.events[j].t));
    }
}

TEST(Simulator, SingleEntryEventOrderMatchesFullComparison) {
    for (double drop : {0.0, 0.5, 0.95}) {
        const auto result = run_simulation(small_config(6, 200, drop, 11));
        for (const auto& a : result.events)
            for (const auto& b : result.events) ASSERT_EQ(detail::event_order(a, b), vc_compare(a.vector, b.vector));
    }
}

TEST(Simulator, SampledDeltaAndFpMatchDirectComputation) {
    auto config = small_config(5, 80, 0.3, 21);
    config.m = 16;
    config.pair_sample_cap = 80 * 79 / 2;
    const auto result = run_simulation(config);
    ASSERT_EQ(result.pair_samples.size(), config.pair_sample_cap);
    for (const auto& s : result.pair_samples) {
        const auto& a = result.events[s.t_a - 1].bloom;
        const auto& b = result.events[s.t_b - 1].bloom;
        ASSERT_EQ(s.delta, delta_sum(a, b));
        if (!s.fp_predicted) continue;
        const auto expected = s.bloom == CausalVerdict::After ? fp_rate(b, a) : fp_rate(a, b);
        ASSERT_EQ(*s.fp_predicted, expected.fp_rate);
    }
}

TEST(Simulator, DeterministicPerSeed) {
    const auto config = small_config(5, 300, 0.2, 77);
    const auto a = run_simulation(config);
    const auto b = run_simulation(config);
    ASSERT_EQ(a.events.size(), b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        EXPECT_EQ(a.events[i].id, b.events[i].id);
        EXPECT_EQ(a.events[i].origin, b.events[i].origin);
        EXPECT_EQ(a.events[i].bloom, b.events[i].bloom);
        EXPECT_EQ(a.events[i].vector, b.events[i].vector);
    }
    EXPECT_EQ(a.metrics, b.metrics);
    EXPECT_EQ(a.pair_samples, b.pair_samples);

    auto other = config;
    other.seed = 78;
    EXPECT_FALSE(run_simulation(other).metrics == a.metrics);
}

TEST(Simulator, MetricsAreConsistent) {
    auto config = small_config(6, 400, 0.4, 5);
    config.m = 16;
    config.k = 2;
    config.pair_sample_cap = 50;
    const auto result = run_simulation(config);
    const auto& m = result.metrics;

    std::uint64_t total = 0;
    for (const auto& row : m.confusion)
        for (auto x : row) total += x;
    EXPECT_EQ(total, m.pairs);
    EXPECT_EQ(m.pairs, 400u * 399u / 2u);
    EXPECT_EQ(m.false_positives, m.count(CausalVerdict::Concurrent, CausalVerdict::Before) +
                                     m.count(CausalVerdict::Concurrent, CausalVerdict::After) +
                                     m.count(CausalVerdict::Concurrent, CausalVerdict::Equal));
    EXPECT_EQ(m.count(CausalVerdict::Before, CausalVerdict::Concurrent), 0u);
    EXPECT_EQ(m.count(CausalVerdict::Before, CausalVerdict::After), 0u);
    EXPECT_EQ(m.false_negatives, 0u);
    // Small m makes false positives likely.
    EXPECT_GT(m.false_positives, 0u);

    std::uint64_t bucketed = 0, bucket_fp = 0;
    for (const auto& b : m.buckets) {
        bucketed += b.comparable;
        bucket_fp += b.false_positives;
        EXPECT_LE(b.delta_lo, b.delta_hi);
    }
    EXPECT_EQ(bucketed, m.bloom_comparable_pairs);
    EXPECT_EQ(bucket_fp, m.false_positives);
    EXPECT_EQ(result.pair_samples.size(), 50u);
    EXPECT_LE(m.accepted_false_positives, m.accepted_pairs);
    EXPECT_GT(m.merge_detections, 0u);
}

TEST(Simulator, SampledPairsCarryPredictionsForComparablePairs) {
    const auto result = run_simulation(small_config(4, 60, 0.5, 8));
    for (const auto& s : result.pair_samples) {
        EXPECT_EQ(s.fp_predicted.has_value(), is_comparable(s.bloom));
        EXPECT_EQ(s.accepted.has_value(), is_comparable(s.bloom));
        EXPECT_LT(s.t_a, s.t_b);
    }
}

TEST(Simulator, BloomTimestampSizeIndependentOfNodeCount) {
    std::vector<double> vector_sizes;
    std::optional<std::uint64_t> bloom_size;
    for (std::uint32_t nodes : {4u, 16u, 64u}) {
        SimConfig c;
        c.n_nodes = nodes;
        c.m = 128;
        c.k = 4;
        c.n_events = 200;
        c.seed = 4;
        const auto m = run_simulation(c).metrics;
        EXPECT_EQ(m.bloom_bytes_min, m.bloom_bytes_max);
        if (!bloom_size) bloom_size = m.bloom_bytes_min;
        EXPECT_EQ(m.bloom_bytes_min, *bloom_size);
        EXPECT_GE(m.vector_bytes_min, 1u + nodes);
        vector_sizes.push_back(m.vector_bytes_per_timestamp());
    }
    EXPECT_LT(vector_sizes[0], vector_sizes[1]);
    EXPECT_LT(vector_sizes[1], vector_sizes[2]);
}

TEST(Simulator, ConfigValidation) {
    SimConfig c;
    c.drop_rate = 1.5;
    EXPECT_THROW((void)run_simulation(c), InvalidInput);
    c = SimConfig{};
    c.m = 0;
    EXPECT_THROW((void)run_simulation(c), InvalidInput);
    c = SimConfig{};
    c.n_nodes = 0;
    EXPECT_THROW((void)run_simulation(c), InvalidInput);
    c = SimConfig{};
    c.fp_threshold = -0.1;
    EXPECT_THROW((void)run_simulation(c), InvalidInput);
    c = SimConfig{};
    c.history_cap = 0;
    EXPECT_THROW((void)run_simulation(c), InvalidInput);
}

TEST(Simulator, DelayParsing) {
    EXPECT_EQ(DelayModel::parse("3"), DelayModel::fixed(3));
    EXPECT_EQ(DelayModel::parse("1:4"), DelayModel::uniform(1, 4));
    EXPECT_EQ(DelayModel::parse("1:4").to_string(), "1:4");
    EXPECT_THROW((void)DelayModel::parse("4:1"), InvalidInput);
    EXPECT_THROW((void)DelayModel::parse("x"), InvalidInput);
    EXPECT_THROW((void)DelayModel::parse("1:"), InvalidInput);
}

TEST(Simulator, ZeroDelayWithoutDropsStaysTotallyOrdered) {
    auto c = small_config(4, 50, 0.0, 6);
    c.delay = DelayModel::fixed(0);
    const auto m = run_simulation(c).metrics;
    EXPECT_EQ(m.concurrent_pairs, 0u);
    EXPECT_EQ(m.count(CausalVerdict::Before, CausalVerdict::Before), m.pairs);
}

TEST(CompareWithConfidence, Examples) {
    const HashFamily six{6, 2, 0};
    const auto a = parse_clock("[0,2,1,2,0,2]", six);
    const auto b = parse_clock("[2,2,1,2,1,2]", six);

    const auto loose = compare_with_confidence(a, b, 0.3);
    EXPECT_EQ(loose.verdict, CausalVerdict::Before);
    ASSERT_TRUE(loose.accepted);
    EXPECT_TRUE(*loose.accepted);
    EXPECT_NEAR(loose.assessment->fp_rate, 0.29, 0.005);

    const auto strict = compare_with_confidence(a, b, 0.1);
    EXPECT_EQ(strict.verdict, CausalVerdict::Before);
    EXPECT_FALSE(*strict.accepted);

    const auto reverse = compare_with_confidence(b, a, 0.3);
    EXPECT_EQ(reverse.verdict, CausalVerdict::After);
    EXPECT_EQ(reverse.assessment->a_sum, 7u);

    const auto concurrent =
        compare_with_confidence(parse_clock("[0,2,1,0,1,2]", six), parse_clock("[1,2,2,0,0,2]", six), 0.3);
    EXPECT_EQ(concurrent.verdict, CausalVerdict::Concurrent);
    EXPECT_TRUE(concurrent.definitive());
    EXPECT_FALSE(concurrent.accepted);
    EXPECT_FALSE(concurrent.assessment);
}

TEST(MonteCarlo, TrivialCases) {
    const auto empty = montecarlo_overlap(6, 0, 10, 1000, 1);
    EXPECT_EQ(empty.mean, 1.0);
    EXPECT_EQ(empty.std_error, 0.0);
    EXPECT_EQ(montecarlo_overlap(1, 4, 9, 1000, 1).mean, 1.0);
    EXPECT_THROW((void)montecarlo_overlap(6, 10, 7, 100, 1), PreconditionViolation);
    EXPECT_THROW((void)montecarlo_overlap(6, 1, 7, 0, 1), InvalidInput);
}

TEST(MonteCarlo, EnumerationOracleMatchesHandValue) {
    EXPECT_NEAR(testing::exact_overlap_probability(2, 2, 3), testing::kOverlapM2A2B3, 1e-15);
    EXPECT_NEAR(testing::exact_overlap_probability(6, 7, 10), testing::kOverlapM6A7B10, 1e-12);
}

TEST(MonteCarlo, AgreesWithEnumerationAtTinyScale) {
    const auto est = montecarlo_overlap(2, 2, 3, 1000000, 2024);
    EXPECT_LE(std::abs(est.mean - testing::kOverlapM2A2B3), 3.0 * est.std_error);
}

TEST(MonteCarlo, PinnedReferencePoint) {
    const auto est = montecarlo_overlap(6, 7, 10, 1000000, 2024);
    EXPECT_LE(std::abs(est.mean - testing::kOverlapM6A7B10), 3.0 * est.std_error);
    // The closed form overstates the true dominance probability here.
    EXPECT_GT(fp_rate_from_sums(6, 7, 10), est.mean);
}

TEST(MonteCarlo, DeterministicAndMonotoneInBSum) {
    EXPECT_EQ(montecarlo_overlap(8, 4, 9, 5000, 3).mean, montecarlo_overlap(8, 4, 9, 5000, 3).mean);
    double prev = 0.0;
    for (std::uint64_t b = 4; b <= 16; ++b) {
        const auto est = montecarlo_overlap(8, 4, b, 5000, 3);
        EXPECT_GE(est.mean, prev);
        prev = est.mean;
    }
}

} // namespace
} // namespace bloomclock
