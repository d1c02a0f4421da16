#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloomclock/errors.hpp"
#include "bloomclock/hashing.hpp"
#include "bloomclock/verdict.hpp"

namespace bloomclock {

namespace detail {

[[nodiscard]] inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("bloom clock counter overflow");
    return a + b;
}

[[nodiscard]] inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw std::overflow_error("bloom clock sum overflow");
    return a * b;
}

} // namespace detail

// A bloom clock timestamp: m counters plus a global offset. The logical value
// of slot i is counters[i] + offset; every comparison and sum works on the
// logical values, so a compacted clock behaves exactly like its expanded form.
//
// Clocks are immutable values. All operations return new clocks.
class BloomClock {
public:
    BloomClock(HashFamily family, std::vector<std::uint64_t> counters, std::uint64_t offset = 0)
        : family_(family), counters_(std::move(counters)), offset_(offset) {
        family_.validate();
        if (counters_.size() != family_.m)
            throw InvalidInput("bloom clock needs exactly m = " + std::to_string(family_.m) + " counters, got " +
                               std::to_string(counters_.size()));
        for (auto c : counters_) (void)detail::checked_add(c, offset_);
    }

    [[nodiscard]] static BloomClock zero(const HashFamily& family) {
        family.validate();
        return BloomClock(family, std::vector<std::uint64_t>(family.m, 0));
    }

    [[nodiscard]] const HashFamily& family() const noexcept { return family_; }
    [[nodiscard]] std::size_t size() const noexcept { return counters_.size(); }
    [[nodiscard]] std::uint64_t offset() const noexcept { return offset_; }
    // Stored counters, without the offset.
    [[nodiscard]] std::span<const std::uint64_t> counters() const noexcept { return counters_; }

    [[nodiscard]] std::uint64_t value(std::size_t slot) const noexcept { return counters_[slot] + offset_; }

    [[nodiscard]] std::vector<std::uint64_t> logical_values() const {
        std::vector<std::uint64_t> out(counters_.size());
        std::transform(counters_.begin(), counters_.end(), out.begin(), [this](auto c) { return c + offset_; });
        return out;
    }

    [[nodiscard]] std::uint64_t logical_sum() const {
        std::uint64_t total = detail::checked_mul(offset_, counters_.size());
        for (auto c : counters_) total = detail::checked_add(total, c);
        return total;
    }

    // Representation equality: same family, offset and stored counters.
    // Use compare() for logical equality.
    friend bool operator==(const BloomClock&, const BloomClock&) = default;

private:
    HashFamily family_;
    std::vector<std::uint64_t> counters_;
    std::uint64_t offset_ = 0;
};

// Probability assessment that `a` is overlapped by chance rather than
// causally preceding `b`. a_sum and b_sum are the logical increment counts.
struct FpAssessment {
    double fp_rate = 1.0;
    std::uint64_t a_sum = 0;
    std::uint64_t b_sum = 0;
};

namespace detail {

inline void require_compatible(const BloomClock& a, const BloomClock& b) {
    if (a.family() != b.family())
        throw IncompatibleClock("bloom clocks use different hash families (m " + std::to_string(a.family().m) + " vs " +
                                std::to_string(b.family().m) + ")");
}

} // namespace detail

[[nodiscard]] inline BloomClock zero(const HashFamily& family) { return BloomClock::zero(family); }

// Local event: increment each of the k hashed slots once.
[[nodiscard]] inline BloomClock tick(const BloomClock& clock, const EventId& event) {
    std::vector<std::uint64_t> counters(clock.counters().begin(), clock.counters().end());
    for (auto idx : indices_for(clock.family(), event)) {
        counters[idx] = detail::checked_add(counters[idx], 1);
        (void)detail::checked_add(counters[idx], clock.offset());
    }
    return BloomClock(clock.family(), std::move(counters), clock.offset());
}

// Receive: slot-wise max of logical values. No local increment happens here;
// the receiver adopts the join of both clocks.
[[nodiscard]] inline BloomClock merge(const BloomClock& a, const BloomClock& b) {
    detail::require_compatible(a, b);
    const std::uint64_t offset = std::min(a.offset(), b.offset());
    std::vector<std::uint64_t> counters(a.size());
    for (std::size_t i = 0; i < counters.size(); ++i) counters[i] = std::max(a.value(i), b.value(i)) - offset;
    return BloomClock(a.family(), std::move(counters), offset);
}

[[nodiscard]] inline CausalVerdict compare(const BloomClock& a, const BloomClock& b) {
    detail::require_compatible(a, b);
    if (a.offset() == b.offset()) return detail::dominance(a.counters(), b.counters());
    detail::DominanceFold fold;
    for (std::size_t i = 0; i < a.size() && !fold.settled(); ++i) fold.add(a.value(i), b.value(i));
    return fold.verdict();
}

// Sum over slots of |b_i - a_i|.
[[nodiscard]] inline std::uint64_t delta_sum(const BloomClock& a, const BloomClock& b) {
    detail::require_compatible(a, b);
    // Logical values are bounded by 2^64, so each term fits; the running
    // total is checked once per slot.
    std::uint64_t total = 0;
    const auto oa = a.offset();
    const auto ob = b.offset();
    const auto ca = a.counters();
    const auto cb = b.counters();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const std::uint64_t x = ca[i] + oa;
        const std::uint64_t y = cb[i] + ob;
        const std::uint64_t d = x > y ? x - y : y - x;
        if (d > ~total) throw std::overflow_error("delta sum overflow");
        total += d;
    }
    return total;
}

namespace detail {

// 1 - (1 - 1/m)^b_sum, evaluated through log1p/expm1 for large m and sums.
[[nodiscard]] inline double slot_hit_probability(std::uint64_t m, std::uint64_t b_sum) {
    return m == 1 ? 1.0 : -std::expm1(static_cast<double>(b_sum) * std::log1p(-1.0 / static_cast<double>(m)));
}

[[nodiscard]] inline double fp_from_slot_hit(double slot_hit, std::uint64_t a_sum) {
    if (a_sum == 0) return 1.0;
    return std::clamp(std::pow(slot_hit, static_cast<double>(a_sum)), 0.0, 1.0);
}

} // namespace detail

// (1 - (1 - 1/m)^b_sum)^a_sum, the chance that a_sum increments are all
// covered by b_sum random increments over m slots. Requires b_sum >= a_sum.
[[nodiscard]] inline double fp_rate_from_sums(std::uint64_t m, std::uint64_t a_sum, std::uint64_t b_sum) {
    if (m < 1) throw InvalidInput("fp rate requires m >= 1");
    if (b_sum < a_sum)
        throw PreconditionViolation("fp rate requires sum(b) >= sum(a), got a_sum " + std::to_string(a_sum) +
                                    " > b_sum " + std::to_string(b_sum) + "; order the pair by sum first");
    if (a_sum == 0) return 1.0;
    return detail::fp_from_slot_hit(detail::slot_hit_probability(m, b_sum), a_sum);
}

[[nodiscard]] inline FpAssessment fp_rate(const BloomClock& a, const BloomClock& b) {
    detail::require_compatible(a, b);
    const auto a_sum = a.logical_sum();
    const auto b_sum = b.logical_sum();
    return FpAssessment{fp_rate_from_sums(a.family().m, a_sum, b_sum), a_sum, b_sum};
}

// Classical bloom filter false-positive probability after n insertions:
// (1 - (1 - 1/m)^(k n))^k.
[[nodiscard]] inline double bloom_filter_fpr(std::uint64_t m, std::uint32_t k, std::uint64_t n) {
    if (m < 1 || k < 1) throw InvalidInput("bloom filter fpr requires m >= 1 and k >= 1");
    if (n == 0) return 0.0;
    const double insertions = static_cast<double>(k) * static_cast<double>(n);
    const double slot_set = m == 1 ? 1.0 : -std::expm1(insertions * std::log1p(-1.0 / static_cast<double>(m)));
    return std::pow(slot_set, static_cast<double>(k));
}

// Move the common minimum of all counters into the offset.
[[nodiscard]] inline BloomClock compact(const BloomClock& clock) {
    const auto counters = clock.counters();
    const std::uint64_t low = counters.empty() ? 0 : *std::min_element(counters.begin(), counters.end());
    if (low == 0) return clock;
    std::vector<std::uint64_t> reduced(counters.size());
    std::transform(counters.begin(), counters.end(), reduced.begin(), [low](auto c) { return c - low; });
    return BloomClock(clock.family(), std::move(reduced), clock.offset() + low);
}

// Text form "(offset)[c0,c1,...]" with the "(offset)" prefix omitted when zero.
[[nodiscard]] inline std::string to_string(const BloomClock& clock) {
    std::string out;
    if (clock.offset() != 0) out += "(" + std::to_string(clock.offset()) + ")";
    out += '[';
    bool first = true;
    for (auto c : clock.counters()) {
        if (!first) out += ',';
        out += std::to_string(c);
        first = false;
    }
    out += ']';
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const BloomClock& clock) { return os << to_string(clock); }

// Inverse of to_string. The counter count must match family.m.
[[nodiscard]] inline BloomClock parse_clock(std::string_view text, const HashFamily& family) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> InvalidInput {
        return InvalidInput("cannot parse bloom clock '" + std::string(text) + "': " + why + " at position " +
                            std::to_string(pos));
    };
    auto number = [&]() {
        std::uint64_t v = 0;
        const auto* begin = text.data() + pos;
        const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
        if (ec != std::errc{} || ptr == begin) throw fail("expected unsigned integer");
        pos += static_cast<std::size_t>(ptr - begin);
        return v;
    };
    auto expect = [&](char c) {
        if (pos >= text.size() || text[pos] != c) throw fail(std::string("expected '") + c + "'");
        ++pos;
    };

    std::uint64_t offset = 0;
    if (pos < text.size() && text[pos] == '(') {
        ++pos;
        offset = number();
        expect(')');
    }
    expect('[');
    std::vector<std::uint64_t> counters;
    if (pos < text.size() && text[pos] != ']') {
        counters.push_back(number());
        while (pos < text.size() && text[pos] == ',') {
            ++pos;
            counters.push_back(number());
        }
    }
    expect(']');
    if (pos != text.size()) throw fail("trailing characters");
    return BloomClock(family, std::move(counters), offset);
}

} // namespace bloomclock
