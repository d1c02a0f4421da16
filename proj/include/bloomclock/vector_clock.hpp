#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloomclock/errors.hpp"
#include "bloomclock/verdict.hpp"

namespace bloomclock {

struct NodeId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

// "A".."Z" for the first 26 nodes, "N26", "N27", ... after that.
[[nodiscard]] inline std::string node_label(NodeId id) {
    if (id.value < 26) return std::string(1, static_cast<char>('A' + id.value));
    return "N" + std::to_string(id.value);
}

// Vector clock over a fixed node set {0, ..., N-1}. Used as the causal
// ground truth next to the bloom clock.
class VectorClock {
public:
    explicit VectorClock(std::size_t node_count) : entries_(node_count, 0) {}
    explicit VectorClock(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}

    [[nodiscard]] std::size_t node_count() const noexcept { return entries_.size(); }
    [[nodiscard]] std::span<const std::uint64_t> entries() const noexcept { return entries_; }

    [[nodiscard]] std::uint64_t at(NodeId id) const {
        require_member(id);
        return entries_[id.value];
    }

    void require_member(NodeId id) const {
        if (id.value >= entries_.size())
            throw InvalidInput("unknown node " + node_label(id) + " for vector clock over " +
                               std::to_string(entries_.size()) + " nodes");
    }

    friend bool operator==(const VectorClock&, const VectorClock&) = default;

private:
    std::vector<std::uint64_t> entries_;
};

namespace detail {

inline void require_same_nodes(const VectorClock& a, const VectorClock& b) {
    if (a.node_count() != b.node_count())
        throw IncompatibleClock("vector clocks cover different node sets (" + std::to_string(a.node_count()) + " vs " +
                                std::to_string(b.node_count()) + " nodes)");
}

} // namespace detail

// Local event or send: bump own entry.
[[nodiscard]] inline VectorClock vc_send(const VectorClock& clock, NodeId self) {
    clock.require_member(self);
    std::vector<std::uint64_t> next(clock.entries().begin(), clock.entries().end());
    ++next[self.value];
    return VectorClock(std::move(next));
}

// Receive: bump own entry, then entry-wise max with the incoming clock.
[[nodiscard]] inline VectorClock vc_receive(const VectorClock& clock, const VectorClock& incoming, NodeId self) {
    detail::require_same_nodes(clock, incoming);
    clock.require_member(self);
    std::vector<std::uint64_t> next(clock.entries().begin(), clock.entries().end());
    ++next[self.value];
    const auto other = incoming.entries();
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::max(next[i], other[i]);
    return VectorClock(std::move(next));
}

[[nodiscard]] inline CausalVerdict vc_compare(const VectorClock& a, const VectorClock& b) {
    detail::require_same_nodes(a, b);
    return detail::dominance(a.entries(), b.entries());
}

// "{A:2,B:1,C:0}"
[[nodiscard]] inline std::string to_string(const VectorClock& clock) {
    std::string out = "{";
    const auto entries = clock.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i != 0) out += ',';
        out += node_label(NodeId{static_cast<std::uint32_t>(i)}) + ":" + std::to_string(entries[i]);
    }
    out += '}';
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const VectorClock& clock) { return os << to_string(clock); }

// Inverse of to_string. Labels must appear in node order.
[[nodiscard]] inline VectorClock parse_vector_clock(std::string_view text) {
    auto fail = [&](const std::string& why) {
        return InvalidInput("cannot parse vector clock '" + std::string(text) + "': " + why);
    };
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw fail("expected braces");
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<std::uint64_t> entries;
    while (!body.empty()) {
        const auto comma = body.find(',');
        const auto item = body.substr(0, comma);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) throw fail("missing ':'");
        const auto expected = node_label(NodeId{static_cast<std::uint32_t>(entries.size())});
        if (item.substr(0, colon) != expected) throw fail("expected label " + expected);
        const auto digits = item.substr(colon + 1);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
            throw fail("bad counter for " + expected);
        entries.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
        if (body.empty()) throw fail("trailing ','");
    }
    return VectorClock(std::move(entries));
}

} // namespace bloomclock
