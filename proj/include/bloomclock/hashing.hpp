#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloomclock/errors.hpp"

namespace bloomclock {

// Opaque identity of an event. Any non-empty byte string.
class EventId {
public:
    explicit EventId(std::string bytes) : bytes_(std::move(bytes)) {
        if (bytes_.empty()) throw InvalidInput("event id must be non-empty");
    }
    explicit EventId(const char* bytes) : EventId(std::string(bytes)) {}

    [[nodiscard]] std::string_view bytes() const noexcept { return bytes_; }

    friend bool operator==(const EventId&, const EventId&) = default;

private:
    std::string bytes_;
};

// 64-bit seeded digest: FNV-1a over the bytes, starting from the FNV offset
// basis xor'ed with the seed, followed by the splitmix64 finalizer to spread
// FNV's weak low bits. Not cryptographic. Golden fixtures depend on this exact
// function, so it must not change without regenerating them.
[[nodiscard]] constexpr std::uint64_t digest64(std::string_view bytes, std::uint64_t seed) noexcept {
    constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t h = kOffsetBasis ^ seed;
    for (char c : bytes) {
        h ^= static_cast<std::uint8_t>(c);
        h *= kPrime;
    }
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

// The k index functions of a counting bloom filter of m slots, realized by
// double hashing: index_i = (h1 + i * h2) mod m with h1, h2 two digests of
// the event under independent seeds.
struct HashFamily {
    std::uint64_t m = 1;
    std::uint32_t k = 1;
    std::uint64_t seed = 0;

    static constexpr std::uint64_t kSecondSeedMask = 0x9e3779b97f4a7c15ULL;

    [[nodiscard]] constexpr bool valid() const noexcept { return m >= 1 && k >= 1; }

    void validate() const {
        if (m < 1) throw InvalidInput("hash family requires m >= 1");
        if (k < 1) throw InvalidInput("hash family requires k >= 1");
    }

    friend constexpr bool operator==(const HashFamily&, const HashFamily&) = default;
};

// Exactly family.k indices in [0, m). Duplicates are kept: each one is a
// separate increment of its slot.
[[nodiscard]] inline std::vector<std::uint64_t> indices_for(const HashFamily& family, const EventId& event) {
    family.validate();
    const auto bytes = event.bytes();
    const std::uint64_t h1 = digest64(bytes, family.seed) % family.m;
    const std::uint64_t h2 = digest64(bytes, family.seed ^ HashFamily::kSecondSeedMask) % family.m;

    std::vector<std::uint64_t> out;
    out.reserve(family.k);
    for (std::uint32_t i = 0; i < family.k; ++i) {
        const auto wide = static_cast<unsigned __int128>(h1) + static_cast<unsigned __int128>(i) * h2;
        out.push_back(static_cast<std::uint64_t>(wide % family.m));
    }
    return out;
}

} // namespace bloomclock
