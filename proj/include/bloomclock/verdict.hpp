#pragma once

#include <cstdint>
#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>

namespace bloomclock {

// Outcome of comparing two timestamps. Concurrent means neither side
// dominates the other (the pair is not comparable).
enum class CausalVerdict : std::uint8_t { Before, After, Equal, Concurrent };

[[nodiscard]] constexpr std::string_view to_string(CausalVerdict v) noexcept {
    switch (v) {
    case CausalVerdict::Before: return "before";
    case CausalVerdict::After: return "after";
    case CausalVerdict::Equal: return "equal";
    case CausalVerdict::Concurrent: return "concurrent";
    }
    return "?";
}

// compare(a, b) == Before  <=>  compare(b, a) == After
[[nodiscard]] constexpr CausalVerdict reversed(CausalVerdict v) noexcept {
    switch (v) {
    case CausalVerdict::Before: return CausalVerdict::After;
    case CausalVerdict::After: return CausalVerdict::Before;
    default: return v;
    }
}

[[nodiscard]] constexpr bool is_comparable(CausalVerdict v) noexcept {
    return v != CausalVerdict::Concurrent;
}

inline std::ostream& operator<<(std::ostream& os, CausalVerdict v) { return os << to_string(v); }

namespace detail {

// Slot-wise dominance fold shared by the bloom and vector comparisons.
// Feed every (lhs, rhs) pair, then read the verdict.
class DominanceFold {
public:
    constexpr void add(std::uint64_t lhs, std::uint64_t rhs) noexcept {
        lhs_greater_ |= lhs > rhs;
        rhs_greater_ |= rhs > lhs;
    }
    [[nodiscard]] constexpr bool settled() const noexcept { return lhs_greater_ && rhs_greater_; }
    [[nodiscard]] constexpr CausalVerdict verdict() const noexcept {
        if (lhs_greater_ && rhs_greater_) return CausalVerdict::Concurrent;
        if (lhs_greater_) return CausalVerdict::After;
        if (rhs_greater_) return CausalVerdict::Before;
        return CausalVerdict::Equal;
    }

private:
    bool lhs_greater_ = false;
    bool rhs_greater_ = false;
};

// Dominance verdict of two equally long counter arrays. Scans in fixed-size
// blocks without branches inside a block and stops once both sides have
// exceeded each other.
template <typename T>
[[nodiscard]] CausalVerdict dominance(std::span<const T> lhs, std::span<const T> rhs) noexcept {
    constexpr std::size_t kBlock = 32;
    bool lhs_greater = false;
    bool rhs_greater = false;
    for (std::size_t start = 0; start < lhs.size(); start += kBlock) {
        const std::size_t end = std::min(lhs.size(), start + kBlock);
        unsigned gt = 0;
        unsigned lt = 0;
        for (std::size_t i = start; i < end; ++i) {
            gt |= static_cast<unsigned>(lhs[i] > rhs[i]);
            lt |= static_cast<unsigned>(lhs[i] < rhs[i]);
        }
        lhs_greater = lhs_greater || gt != 0;
        rhs_greater = rhs_greater || lt != 0;
        if (lhs_greater && rhs_greater) return CausalVerdict::Concurrent;
    }
    if (lhs_greater) return CausalVerdict::After;
    if (rhs_greater) return CausalVerdict::Before;
    return CausalVerdict::Equal;
}

} // namespace detail
} // namespace bloomclock
