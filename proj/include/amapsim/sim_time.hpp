#pragma once

#include <cstdint>

namespace amapsim {

// Virtual time in 1-microsecond ticks. All durations are integers so that
// runs replay bit-identically; there is no floating-point time anywhere.
using SimTime = std::int64_t;

constexpr SimTime kTicksPerSecond = 1'000'000;
constexpr SimTime kTicksPerMillisecond = 1'000;

constexpr SimTime from_seconds(std::int64_t s) { return s * kTicksPerSecond; }
constexpr SimTime from_ms(std::int64_t ms) { return ms * kTicksPerMillisecond; }

}  // namespace amapsim
