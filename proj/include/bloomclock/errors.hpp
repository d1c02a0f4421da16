#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bloomclock {

// Malformed argument: empty event id, out-of-range probability, bad config.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two clocks built over different hash families (m, k or seed differ).
class IncompatibleClock : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation was called with arguments violating its ordering precondition,
// e.g. fp_rate with sum(b) < sum(a).
class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class DecodeError : public std::runtime_error {
public:
    DecodeError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace bloomclock
