#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bloomclock/bloom_clock.hpp"
#include "bloomclock/errors.hpp"
#include "bloomclock/vector_clock.hpp"

// Binary clock layout:
//   0xBC  magic
//   0x01  format version
//   uleb128(m) uleb128(offset) uleb128(counter_0) ... uleb128(counter_{m-1})
//
// The layout carries no node count, so its size depends only on m and the
// counter magnitudes.

namespace bloomclock {

inline constexpr std::uint8_t kClockMagic = 0xBC;
inline constexpr std::uint8_t kClockFormatVersion = 0x01;

namespace varint {

inline void put(std::vector<std::uint8_t>& out, std::uint64_t value) {
    do {
        std::uint8_t byte = value & 0x7F;
        value >>= 7;
        if (value != 0) byte |= 0x80;
        out.push_back(byte);
    } while (value != 0);
}

[[nodiscard]] constexpr std::size_t size(std::uint64_t value) noexcept {
    std::size_t n = 1;
    while (value >= 0x80) {
        value >>= 7;
        ++n;
    }
    return n;
}

// Reads one value at `pos` and advances it. Rejects truncation and values
// that do not fit in 64 bits.
[[nodiscard]] inline std::uint64_t get(std::span<const std::uint8_t> in, std::size_t& pos) {
    const std::size_t start = pos;
    std::uint64_t value = 0;
    for (unsigned shift = 0;; shift += 7) {
        if (pos >= in.size()) throw DecodeError("truncated varint", start);
        const std::uint8_t byte = in[pos++];
        const std::uint64_t bits = byte & 0x7F;
        if (shift == 63 && bits > 1) throw DecodeError("varint overflows 64 bits", start);
        value |= bits << shift;
        if ((byte & 0x80) == 0) return value;
        if (shift == 63) throw DecodeError("varint overflows 64 bits", start);
    }
}

} // namespace varint

[[nodiscard]] inline std::vector<std::uint8_t> encode_clock(const BloomClock& clock) {
    std::vector<std::uint8_t> out{kClockMagic, kClockFormatVersion};
    varint::put(out, clock.size());
    varint::put(out, clock.offset());
    for (auto c : clock.counters()) varint::put(out, c);
    return out;
}

[[nodiscard]] inline std::size_t encoded_size(const BloomClock& clock) noexcept {
    std::size_t n = 2 + varint::size(clock.size()) + varint::size(clock.offset());
    for (auto c : clock.counters()) n += varint::size(c);
    return n;
}

// The wire format does not carry k or the seed; the caller supplies the
// family and the encoded m must match it.
[[nodiscard]] inline BloomClock decode_clock(std::span<const std::uint8_t> bytes, const HashFamily& family) {
    family.validate();
    if (bytes.empty()) throw DecodeError("missing magic byte", 0);
    if (bytes[0] != kClockMagic) throw DecodeError("bad magic byte", 0);
    if (bytes.size() < 2) throw DecodeError("missing format version", 1);
    if (bytes[1] != kClockFormatVersion) throw DecodeError("unsupported format version", 1);

    std::size_t pos = 2;
    const std::size_t m_at = pos;
    const std::uint64_t m = varint::get(bytes, pos);
    if (m != family.m) throw DecodeError("slot count does not match hash family", m_at);
    const std::uint64_t offset = varint::get(bytes, pos);
    if (m > bytes.size() - pos) throw DecodeError("truncated counters", pos);

    std::vector<std::uint64_t> counters;
    counters.reserve(static_cast<std::size_t>(m));
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::size_t at = pos;
        const auto c = varint::get(bytes, pos);
        if (c > std::numeric_limits<std::uint64_t>::max() - offset)
            throw DecodeError("counter plus offset overflows", at);
        counters.push_back(c);
    }
    if (pos != bytes.size()) throw DecodeError("trailing bytes", pos);
    return BloomClock(family, std::move(counters), offset);
}

// Vector timestamps in the same varint style: uleb128(N) then N entries.
// Used to compare wire sizes against bloom timestamps.
[[nodiscard]] inline std::vector<std::uint8_t> encode_vector_clock(const VectorClock& clock) {
    std::vector<std::uint8_t> out;
    varint::put(out, clock.node_count());
    for (auto e : clock.entries()) varint::put(out, e);
    return out;
}

[[nodiscard]] inline std::size_t encoded_size(const VectorClock& clock) noexcept {
    std::size_t n = varint::size(clock.node_count());
    for (auto e : clock.entries()) n += varint::size(e);
    return n;
}

[[nodiscard]] inline VectorClock decode_vector_clock(std::span<const std::uint8_t> bytes) {
    std::size_t pos = 0;
    const auto n = varint::get(bytes, pos);
    if (n > bytes.size()) throw DecodeError("node count exceeds input", 0);
    std::vector<std::uint64_t> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < n; ++i) entries.push_back(varint::get(bytes, pos));
    if (pos != bytes.size()) throw DecodeError("trailing bytes", pos);
    return VectorClock(std::move(entries));
}

} // namespace bloomclock
