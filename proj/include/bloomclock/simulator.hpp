#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloomclock/bloom_clock.hpp"
#include "bloomclock/codec.hpp"
#include "bloomclock/errors.hpp"
#include "bloomclock/hashing.hpp"
#include "bloomclock/history.hpp"
#include "bloomclock/vector_clock.hpp"

namespace bloomclock {

// Message delay in abstract virtual-time ticks. Internal events are
// scheduled one tick apart.
struct DelayModel {
    std::uint64_t min = 1;
    std::uint64_t max = 1;

    [[nodiscard]] static DelayModel fixed(std::uint64_t ticks) { return {ticks, ticks}; }
    [[nodiscard]] static DelayModel uniform(std::uint64_t lo, std::uint64_t hi) { return {lo, hi}; }
    [[nodiscard]] bool is_fixed() const noexcept { return min == max; }

    // "3" for a fixed delay, "1:4" for uniform over [1, 4].
    [[nodiscard]] static DelayModel parse(std::string_view text) {
        auto number = [&](std::string_view digits) {
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
            if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
                throw InvalidInput("bad delay '" + std::string(text) + "', expected N or LO:HI");
            return v;
        };
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) return fixed(number(text));
        DelayModel d{number(text.substr(0, colon)), number(text.substr(colon + 1))};
        if (d.min > d.max) throw InvalidInput("delay range '" + std::string(text) + "' has lo > hi");
        return d;
    }

    [[nodiscard]] std::string to_string() const {
        return is_fixed() ? std::to_string(min) : std::to_string(min) + ":" + std::to_string(max);
    }

    friend bool operator==(const DelayModel&, const DelayModel&) = default;
};

struct SimConfig {
    std::uint32_t n_nodes = 4;
    std::uint64_t m = 128;
    std::uint32_t k = 4;
    std::uint64_t n_events = 1000;
    double drop_rate = 0.0;
    DelayModel delay = DelayModel::uniform(1, 4);
    std::uint64_t seed = 1;
    double fp_threshold = 0.05;
    std::optional<std::size_t> history_cap = 64;
    // Upper bound on compared pairs kept verbatim for export.
    std::size_t pair_sample_cap = 10000;

    [[nodiscard]] HashFamily family() const noexcept { return HashFamily{m, k, seed}; }

    void validate() const {
        if (n_nodes < 1) throw InvalidInput("n_nodes must be >= 1");
        family().validate();
        if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) throw InvalidInput("drop_rate must lie in [0, 1]");
        if (!(fp_threshold >= 0.0 && fp_threshold <= 1.0)) throw InvalidInput("fp_threshold must lie in [0, 1]");
        if (delay.min > delay.max) throw InvalidInput("delay range has min > max");
        if (history_cap && *history_cap == 0) throw InvalidInput("history_cap must be positive");
    }
};

struct EventRecord {
    EventId id;
    NodeId origin;
    // Global emission order, starting at 1.
    std::uint64_t t = 0;
    BloomClock bloom;
    VectorClock vector;
    std::vector<std::uint64_t> indices;
};

// One step in a node's local trace, in processing order.
struct TraceStep {
    enum class Kind : std::uint8_t { Local, Deliver };
    Kind kind = Kind::Local;
    // t of the emitted (Local) or received (Deliver) event.
    std::uint64_t t = 0;
};

// N nodes holding a bloom clock, the parallel vector clock, and a local
// history. Internal events tick and are recorded; deliveries merge.
class Network {
public:
    Network(HashFamily family, std::uint32_t n_nodes, std::optional<std::size_t> history_cap = std::nullopt)
        : family_(family) {
        family_.validate();
        if (n_nodes < 1) throw InvalidInput("network needs at least one node");
        nodes_.reserve(n_nodes);
        for (std::uint32_t i = 0; i < n_nodes; ++i)
            nodes_.push_back(Node{BloomClock::zero(family_), VectorClock(n_nodes), ClockHistory(history_cap), {}});
        for (auto& node : nodes_) node.history.append(node.bloom);
    }

    // Internal event at `origin`: bloom tick plus vector send. Returns the
    // index of the new record in events().
    std::size_t emit(NodeId origin, EventId id) {
        auto& node = at(origin);
        node.bloom = tick(node.bloom, id);
        node.vector = vc_send(node.vector, origin);
        node.history.append(node.bloom, id);
        const std::uint64_t t = events_.size() + 1;
        node.trace.push_back(TraceStep{TraceStep::Kind::Local, t});
        auto indices = indices_for(family_, id);
        events_.push_back(EventRecord{std::move(id), origin, t, node.bloom, node.vector, std::move(indices)});
        return events_.size() - 1;
    }

    // Delivery of a recorded event's timestamps to `recipient`. Returns true
    // when the receiver's history shows growth not explained by the event
    // itself, i.e. it absorbed state concurrent with its own.
    bool deliver(std::size_t event_index, NodeId recipient) {
        const auto& record = events_.at(event_index);
        auto& node = at(recipient);
        const BloomClock prev = node.bloom;
        node.bloom = merge(node.bloom, record.bloom);
        node.vector = vc_receive(node.vector, record.vector, recipient);
        node.history.append(node.bloom);
        node.trace.push_back(TraceStep{TraceStep::Kind::Deliver, record.t});
        const bool merged = detect_merge(prev, node.bloom, record.id);
        merge_detections_ += merged ? 1 : 0;
        return merged;
    }

    [[nodiscard]] std::uint32_t node_count() const noexcept { return static_cast<std::uint32_t>(nodes_.size()); }
    [[nodiscard]] const HashFamily& family() const noexcept { return family_; }
    [[nodiscard]] const BloomClock& bloom(NodeId id) const { return at(id).bloom; }
    [[nodiscard]] const VectorClock& vector(NodeId id) const { return at(id).vector; }
    [[nodiscard]] const ClockHistory& history(NodeId id) const { return at(id).history; }
    [[nodiscard]] std::span<const TraceStep> trace(NodeId id) const { return at(id).trace; }
    [[nodiscard]] const std::vector<EventRecord>& events() const noexcept { return events_; }
    [[nodiscard]] std::uint64_t merge_detections() const noexcept { return merge_detections_; }

    [[nodiscard]] std::vector<std::vector<TraceStep>> traces() const {
        std::vector<std::vector<TraceStep>> out;
        out.reserve(nodes_.size());
        for (const auto& node : nodes_) out.push_back(node.trace);
        return out;
    }

    [[nodiscard]] std::vector<EventRecord> take_events() && { return std::move(events_); }

private:
    struct Node {
        BloomClock bloom;
        VectorClock vector;
        ClockHistory history;
        std::vector<TraceStep> trace;
    };

    Node& at(NodeId id) {
        if (id.value >= nodes_.size()) throw InvalidInput("unknown node " + node_label(id));
        return nodes_[id.value];
    }
    const Node& at(NodeId id) const {
        if (id.value >= nodes_.size()) throw InvalidInput("unknown node " + node_label(id));
        return nodes_[id.value];
    }

    HashFamily family_;
    std::vector<Node> nodes_;
    std::vector<EventRecord> events_;
    std::uint64_t merge_detections_ = 0;
};

// A scripted internal event, delivered instantly to the listed recipients.
struct ScriptedStep {
    NodeId origin;
    EventId event;
    std::vector<NodeId> recipients;
};

[[nodiscard]] inline Network replay(const HashFamily& family, std::uint32_t n_nodes,
                                    std::span<const ScriptedStep> script) {
    Network net(family, n_nodes);
    for (const auto& step : script) {
        const auto index = net.emit(step.origin, step.event);
        for (auto to : step.recipients) net.deliver(index, to);
    }
    return net;
}

// Outcome of a confidence-gated comparison. Concurrent verdicts are
// definitive and carry no assessment.
struct ConfidentVerdict {
    CausalVerdict verdict = CausalVerdict::Concurrent;
    std::optional<FpAssessment> assessment;
    std::optional<bool> accepted;

    [[nodiscard]] bool definitive() const noexcept { return verdict == CausalVerdict::Concurrent; }
};

[[nodiscard]] inline ConfidentVerdict compare_with_confidence(const BloomClock& a, const BloomClock& b,
                                                              double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidInput("fp threshold must lie in [0, 1]");
    const auto v = compare(a, b);
    if (v == CausalVerdict::Concurrent) return {v, std::nullopt, std::nullopt};
    const auto assessment = v == CausalVerdict::After ? fp_rate(b, a) : fp_rate(a, b);
    return {v, assessment, assessment.fp_rate <= threshold};
}

struct PairSample {
    std::uint64_t t_a = 0;
    std::uint64_t t_b = 0;
    CausalVerdict truth = CausalVerdict::Concurrent;
    CausalVerdict bloom = CausalVerdict::Concurrent;
    std::uint64_t delta = 0;
    std::optional<double> fp_predicted;
    std::optional<bool> accepted;

    friend bool operator==(const PairSample&, const PairSample&) = default;
};

// Bloom-comparable pairs grouped by delta_sum in power-of-two ranges:
// [0,0], [1,1], [2,3], [4,7], ...
struct FpBucket {
    std::uint64_t delta_lo = 0;
    std::uint64_t delta_hi = 0;
    std::uint64_t comparable = 0;
    std::uint64_t false_positives = 0;
    double predicted_fp_sum = 0.0;

    [[nodiscard]] double empirical_fp_rate() const noexcept {
        return comparable == 0 ? 0.0 : static_cast<double>(false_positives) / static_cast<double>(comparable);
    }
    [[nodiscard]] double mean_predicted_fp() const noexcept {
        return comparable == 0 ? 0.0 : predicted_fp_sum / static_cast<double>(comparable);
    }

    friend bool operator==(const FpBucket&, const FpBucket&) = default;
};

struct SimMetrics {
    static constexpr std::size_t kVerdicts = 4;

    std::uint64_t events = 0;
    std::uint64_t pairs = 0;
    // confusion[truth][bloom], indexed by CausalVerdict.
    std::array<std::array<std::uint64_t, kVerdicts>, kVerdicts> confusion{};
    std::uint64_t concurrent_pairs = 0;
    std::uint64_t bloom_comparable_pairs = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t false_negatives = 0;
    std::uint64_t accepted_pairs = 0;
    std::uint64_t accepted_false_positives = 0;
    double predicted_fp_sum = 0.0;
    std::vector<FpBucket> buckets;

    std::uint64_t messages_sent = 0;
    std::uint64_t messages_dropped = 0;
    std::uint64_t merge_detections = 0;

    std::uint64_t bloom_bytes_total = 0;
    std::uint64_t bloom_bytes_min = 0;
    std::uint64_t bloom_bytes_max = 0;
    std::uint64_t vector_bytes_total = 0;
    std::uint64_t vector_bytes_min = 0;
    std::uint64_t vector_bytes_max = 0;

    // Share of bloom-comparable pairs that are causally concurrent.
    [[nodiscard]] double empirical_fp_rate() const noexcept {
        return bloom_comparable_pairs == 0
                   ? 0.0
                   : static_cast<double>(false_positives) / static_cast<double>(bloom_comparable_pairs);
    }
    // Share of concurrent pairs the bloom clock reports as ordered.
    [[nodiscard]] double concurrent_misordered_rate() const noexcept {
        return concurrent_pairs == 0 ? 0.0
                                     : static_cast<double>(false_positives) / static_cast<double>(concurrent_pairs);
    }
    [[nodiscard]] double mean_predicted_fp() const noexcept {
        return bloom_comparable_pairs == 0 ? 0.0 : predicted_fp_sum / static_cast<double>(bloom_comparable_pairs);
    }
    [[nodiscard]] double bloom_bytes_per_timestamp() const noexcept {
        return events == 0 ? 0.0 : static_cast<double>(bloom_bytes_total) / static_cast<double>(events);
    }
    [[nodiscard]] double vector_bytes_per_timestamp() const noexcept {
        return events == 0 ? 0.0 : static_cast<double>(vector_bytes_total) / static_cast<double>(events);
    }
    [[nodiscard]] std::uint64_t count(CausalVerdict truth, CausalVerdict bloom) const noexcept {
        return confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(bloom)];
    }

    friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

struct SimResult {
    std::vector<EventRecord> events;
    SimMetrics metrics;
    std::vector<PairSample> pair_samples;
    // Per-node local steps; enough to rebuild the causal DAG independently.
    std::vector<std::vector<TraceStep>> traces;
    // Each node's bloom clock once every delivery has been processed.
    std::vector<BloomClock> final_clocks;
};

namespace detail {

[[nodiscard]] inline bool is_false_negative(CausalVerdict truth, CausalVerdict bloom) noexcept {
    switch (truth) {
    case CausalVerdict::Before: return bloom != CausalVerdict::Before && bloom != CausalVerdict::Equal;
    case CausalVerdict::After: return bloom != CausalVerdict::After && bloom != CausalVerdict::Equal;
    case CausalVerdict::Equal: return bloom != CausalVerdict::Equal;
    case CausalVerdict::Concurrent: return false;
    }
    return false;
}

// Causal order of two recorded events from their vector clocks. Every emit
// bumps the origin's own entry, so a happened-before b exactly when b has
// seen a's own-entry value. Agrees with vc_compare on recorded events and
// reads one entry per side instead of all n.
[[nodiscard]] inline CausalVerdict event_order(const EventRecord& a, const EventRecord& b) {
    if (a.t == b.t) return CausalVerdict::Equal;
    const auto oa = a.origin.value;
    const auto ob = b.origin.value;
    if (b.vector.entries()[oa] >= a.vector.entries()[oa]) return CausalVerdict::Before;
    if (a.vector.entries()[ob] >= b.vector.entries()[ob]) return CausalVerdict::After;
    return CausalVerdict::Concurrent;
}

[[nodiscard]] inline std::size_t bucket_of(std::uint64_t delta) noexcept {
    return static_cast<std::size_t>(std::bit_width(delta));
}

} // namespace detail

// Classifies every unordered pair of events (earlier t first) against the
// vector-clock ground truth. Keeps the first `sample_cap` pairs verbatim.
[[nodiscard]] inline SimMetrics evaluate_pairs(std::span<const EventRecord> events, double fp_threshold,
                                               std::size_t sample_cap, std::vector<PairSample>* samples) {
    SimMetrics metrics;
    metrics.events = events.size();

    std::vector<std::uint64_t> sums;
    std::vector<double> slot_hit;
    sums.reserve(events.size());
    slot_hit.reserve(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        sums.push_back(e.bloom.logical_sum());
        slot_hit.push_back(detail::slot_hit_probability(e.bloom.family().m, sums.back()));
        const std::uint64_t bb = encoded_size(e.bloom);
        const std::uint64_t vb = encoded_size(e.vector);
        const bool first = i == 0;
        metrics.bloom_bytes_total += bb;
        metrics.vector_bytes_total += vb;
        metrics.bloom_bytes_min = first ? bb : std::min(metrics.bloom_bytes_min, bb);
        metrics.bloom_bytes_max = std::max(metrics.bloom_bytes_max, bb);
        metrics.vector_bytes_min = first ? vb : std::min(metrics.vector_bytes_min, vb);
        metrics.vector_bytes_max = std::max(metrics.vector_bytes_max, vb);
    }

    // Logical values packed as int32 when they fit; the dense layout lets the
    // slot scan vectorize. Falls back to compare() for larger values.
    const std::size_t m = events.empty() ? 0 : events.front().bloom.size();
    bool packed = true;
    std::vector<std::int32_t> flat;
    for (const auto& e : events) {
        for (std::size_t s = 0; s < m && packed; ++s) {
            const auto v = e.bloom.value(s);
            packed = v <= static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max());
            flat.push_back(static_cast<std::int32_t>(v));
        }
        if (!packed) break;
    }
    auto bloom_order = [&](std::size_t i, std::size_t j) {
        if (!packed) return compare(events[i].bloom, events[j].bloom);
        detail::require_compatible(events[i].bloom, events[j].bloom);
        return detail::dominance(std::span<const std::int32_t>(flat.data() + i * m, m),
                                 std::span<const std::int32_t>(flat.data() + j * m, m));
    };

    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& a = events[i];
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            const auto& b = events[j];
            const auto truth = detail::event_order(a, b);
            const auto bloom = bloom_order(i, j);
            ++metrics.pairs;
            ++metrics.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(bloom)];
            if (truth == CausalVerdict::Concurrent) ++metrics.concurrent_pairs;
            if (detail::is_false_negative(truth, bloom)) ++metrics.false_negatives;

            PairSample sample{a.t, b.t, truth, bloom, 0, std::nullopt, std::nullopt};
            if (is_comparable(bloom)) {
                // Dominance implies the sum order fp_rate needs.
                const auto lo = bloom == CausalVerdict::After ? sums[j] : sums[i];
                const auto hi = bloom == CausalVerdict::After ? sums[i] : sums[j];
                // Same value as fp_rate_from_sums(m, lo, hi), with the b-side
                // term computed once per event.
                const double fp = detail::fp_from_slot_hit(bloom == CausalVerdict::After ? slot_hit[i] : slot_hit[j], lo);
                const bool accepted = fp <= fp_threshold;
                const bool false_positive = truth == CausalVerdict::Concurrent;
                // One side dominates, so the slot-wise distance is the sum gap.
                const auto delta = hi - lo;

                ++metrics.bloom_comparable_pairs;
                metrics.predicted_fp_sum += fp;
                metrics.false_positives += false_positive ? 1 : 0;
                metrics.accepted_pairs += accepted ? 1 : 0;
                metrics.accepted_false_positives += (accepted && false_positive) ? 1 : 0;

                const auto bucket = detail::bucket_of(delta);
                if (metrics.buckets.size() <= bucket) {
                    const auto old = metrics.buckets.size();
                    metrics.buckets.resize(bucket + 1);
                    for (auto b_idx = old; b_idx < metrics.buckets.size(); ++b_idx) {
                        metrics.buckets[b_idx].delta_lo = b_idx == 0 ? 0 : (std::uint64_t{1} << (b_idx - 1));
                        metrics.buckets[b_idx].delta_hi = b_idx == 0 ? 0 : (std::uint64_t{1} << (b_idx - 1)) * 2 - 1;
                    }
                }
                auto& slot = metrics.buckets[bucket];
                ++slot.comparable;
                slot.false_positives += false_positive ? 1 : 0;
                slot.predicted_fp_sum += fp;

                sample.delta = delta;
                sample.fp_predicted = fp;
                sample.accepted = accepted;
            } else if (samples != nullptr && samples->size() < sample_cap) {
                sample.delta = delta_sum(a.bloom, b.bloom);
            }
            if (samples != nullptr && samples->size() < sample_cap) samples->push_back(sample);
        }
    }
    return metrics;
}

namespace detail {

// Unbiased-enough bounded draw: multiply-shift, bias <= n / 2^64.
template <typename Rng>
[[nodiscard]] std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

template <typename Rng>
[[nodiscard]] double unit_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Deterministic discrete-event run. Internal event i fires at virtual time i
// on a node picked round-robin, except that with probability 1/2 a uniformly
// random node is picked instead. Every event is broadcast; each (message,
// recipient) is dropped with probability drop_rate, otherwise delivered after
// a delay drawn from the delay model. At equal times deliveries run before
// internal events.
[[nodiscard]] inline SimResult run_simulation(const SimConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    Network net(config.family(), config.n_nodes, config.history_cap);

    struct Pending {
        std::uint64_t time;
        std::uint8_t kind; // 0 = delivery, 1 = internal event
        std::uint64_t seq;
        std::size_t event_index;
        NodeId node;
        bool operator>(const Pending& o) const noexcept {
            if (time != o.time) return time > o.time;
            if (kind != o.kind) return kind > o.kind;
            return seq > o.seq;
        }
    };
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue;
    std::uint64_t seq = 0;
    SimMetrics counters;

    std::uint32_t cursor = 0;
    for (std::uint64_t i = 0; i < config.n_events; ++i) {
        NodeId origin{cursor};
        cursor = (cursor + 1) % config.n_nodes;
        if (detail::uniform_below(rng, 2) == 1)
            origin = NodeId{static_cast<std::uint32_t>(detail::uniform_below(rng, config.n_nodes))};
        queue.push(Pending{i, 1, seq++, 0, origin});
    }

    while (!queue.empty()) {
        const Pending item = queue.top();
        queue.pop();
        if (item.kind == 1) {
            const auto index = net.emit(item.node, EventId("e" + std::to_string(net.events().size() + 1)));
            for (std::uint32_t r = 0; r < config.n_nodes; ++r) {
                if (r == item.node.value) continue;
                ++counters.messages_sent;
                if (config.drop_rate > 0.0 && detail::unit_double(rng) < config.drop_rate) {
                    ++counters.messages_dropped;
                    continue;
                }
                const auto delay = config.delay.min + detail::uniform_below(rng, config.delay.max - config.delay.min + 1);
                queue.push(Pending{item.time + delay, 0, seq++, index, NodeId{r}});
            }
        } else {
            net.deliver(item.event_index, item.node);
        }
    }

    SimResult result;
    result.traces = net.traces();
    for (std::uint32_t n = 0; n < net.node_count(); ++n) result.final_clocks.push_back(net.bloom(NodeId{n}));
    const auto merges = net.merge_detections();
    result.events = std::move(net).take_events();
    result.metrics = evaluate_pairs(result.events, config.fp_threshold, config.pair_sample_cap, &result.pair_samples);
    result.metrics.messages_sent = counters.messages_sent;
    result.metrics.messages_dropped = counters.messages_dropped;
    result.metrics.merge_detections = merges;
    return result;
}

// Estimate of P(B dominates A) with standard error of the mean.
struct OverlapEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

namespace detail {

// splitmix64 stream, used to give each Monte Carlo trial its own cheap,
// independently seeded generator.
struct SplitMix64 {
    using result_type = std::uint64_t;
    std::uint64_t state;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() noexcept {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

} // namespace detail

// Builds A and B independently from zero by a_sum and b_sum uniform random
// slot increments and counts how often B dominates A slot-wise. Trial t uses
// its own generator seeded from (seed, t) and draws A before B, so for a
// fixed seed the estimate is non-decreasing in b_sum.
[[nodiscard]] inline OverlapEstimate montecarlo_overlap(std::uint64_t m, std::uint64_t a_sum, std::uint64_t b_sum,
                                                        std::uint64_t trials, std::uint64_t seed) {
    if (m < 1) throw InvalidInput("montecarlo_overlap requires m >= 1");
    if (trials < 1) throw InvalidInput("montecarlo_overlap requires trials >= 1");
    if (b_sum < a_sum)
        throw PreconditionViolation("montecarlo_overlap requires b_sum >= a_sum, got a_sum " + std::to_string(a_sum) +
                                    " > b_sum " + std::to_string(b_sum));
    if (a_sum == 0 || m == 1) return {1.0, 0.0, trials};

    std::vector<std::uint64_t> a(m);
    std::vector<std::uint64_t> b(m);
    std::uint64_t hits = 0;
    const std::uint64_t base = detail::SplitMix64{seed}();
    for (std::uint64_t t = 0; t < trials; ++t) {
        detail::SplitMix64 rng{base ^ (t * 0xd1b54a32d192ed03ULL)};
        std::fill(a.begin(), a.end(), 0);
        std::fill(b.begin(), b.end(), 0);
        for (std::uint64_t i = 0; i < a_sum; ++i) ++a[detail::uniform_below(rng, m)];
        for (std::uint64_t i = 0; i < b_sum; ++i) ++b[detail::uniform_below(rng, m)];
        bool dominated = true;
        for (std::uint64_t s = 0; s < m && dominated; ++s) dominated = b[s] >= a[s];
        hits += dominated ? 1 : 0;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n), trials};
}

} // namespace bloomclock
