#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>

#include "bloomclock/bloom_clock.hpp"
#include "bloomclock/errors.hpp"
#include "bloomclock/hashing.hpp"

namespace bloomclock {

struct HistoryEntry {
    std::uint64_t seq = 0;
    BloomClock clock;
    // Set when the entry was produced by a local tick of this event.
    std::optional<EventId> event;
};

// Local timestamp history of one node, oldest first. Each entry dominates
// its predecessor. With a cap, the oldest entries are evicted first.
class ClockHistory {
public:
    ClockHistory() = default;
    explicit ClockHistory(std::optional<std::size_t> cap) : cap_(cap) {
        if (cap_ && *cap_ == 0) throw InvalidInput("history cap must be positive");
    }

    // Appends with the next sequence number and returns it.
    std::uint64_t append(BloomClock clock, std::optional<EventId> event = std::nullopt) {
        if (!entries_.empty()) {
            const auto v = compare(entries_.back().clock, clock);
            if (v != CausalVerdict::Before && v != CausalVerdict::Equal)
                throw InvalidInput("history entries must be non-decreasing; " + to_string(clock) +
                                   " does not dominate " + to_string(entries_.back().clock));
        }
        const std::uint64_t seq = next_seq_++;
        entries_.push_back(HistoryEntry{seq, std::move(clock), std::move(event)});
        if (cap_ && entries_.size() > *cap_) entries_.pop_front();
        return seq;
    }

    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::deque<HistoryEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] const HistoryEntry& latest() const { return entries_.back(); }
    [[nodiscard]] std::optional<std::size_t> cap() const noexcept { return cap_; }

private:
    std::deque<HistoryEntry> entries_;
    std::optional<std::size_t> cap_;
    std::uint64_t next_seq_ = 0;
};

struct Predecessor {
    std::uint64_t seq = 0;
    BloomClock clock;
    std::uint64_t delta = 0;
    FpAssessment assessment;
};

// Among history entries that dominate `remote`, the one closest to it by
// delta_sum, with the fp assessment of remote against it. Ties go to the
// earliest entry. Entries concurrent with or below remote are skipped.
[[nodiscard]] inline std::optional<Predecessor> best_predecessor(const ClockHistory& history,
                                                                 const BloomClock& remote) {
    if (history.empty()) throw InvalidInput("best_predecessor needs a non-empty history");
    const HistoryEntry* best = nullptr;
    std::uint64_t best_delta = 0;
    for (const auto& entry : history.entries()) {
        const auto v = compare(remote, entry.clock);
        if (v != CausalVerdict::Before && v != CausalVerdict::Equal) continue;
        const auto d = delta_sum(remote, entry.clock);
        if (best == nullptr || d < best_delta) {
            best = &entry;
            best_delta = d;
        }
    }
    if (best == nullptr) return std::nullopt;
    return Predecessor{best->seq, best->clock, best_delta, fp_rate(remote, best->clock)};
}

// True iff next == tick(prev, event), i.e. the slot-wise difference is
// exactly the event's increment multiset.
[[nodiscard]] inline bool provenance_check(const BloomClock& prev, const BloomClock& next, const EventId& event) {
    const auto v = compare(prev, next);
    if (v != CausalVerdict::Before && v != CausalVerdict::Equal)
        throw InvalidInput("provenance_check needs prev dominated by next; got " + to_string(prev) + " vs " +
                           to_string(next) + " (" + std::string(to_string(v)) + ")");
    return compare(tick(prev, event), next) == CausalVerdict::Equal;
}

// Evidence that `next` absorbed a clock concurrent with `prev`: next strictly
// dominates prev and the growth is not explained by the step's own event.
[[nodiscard]] inline bool detect_merge(const BloomClock& prev, const BloomClock& next,
                                       const std::optional<EventId>& event) {
    if (compare(prev, next) != CausalVerdict::Before) return false;
    return !event || !provenance_check(prev, next, *event);
}

} // namespace bloomclock
