#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace relcomm {

// Time is kept as an exact count of integer ticks. Event ordering and interval
// arithmetic must be exact, so floating point is not used anywhere in the time
// domain; the tick resolution only matters when converting to or from decimal
// time units at I/O boundaries (see TickRate).

struct Duration {
  std::int64_t ticks = 0;

  constexpr Duration() = default;
  constexpr explicit Duration(std::int64_t t) : ticks(t) {}

  auto operator<=>(const Duration&) const = default;

  constexpr bool is_zero() const { return ticks == 0; }
};

struct Timestamp {
  std::int64_t ticks = 0;

  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t t) : ticks(t) {}

  auto operator<=>(const Timestamp&) const = default;
};

constexpr Timestamp operator+(Timestamp t, Duration d) {
  return Timestamp(t.ticks + d.ticks);
}

constexpr Duration operator-(Timestamp a, Timestamp b) {
  return Duration(a.ticks - b.ticks);
}

constexpr Duration operator+(Duration a, Duration b) {
  return Duration(a.ticks + b.ticks);
}

inline void require_non_negative(Timestamp t, const char* what) {
  if (t.ticks < 0) throw std::invalid_argument(std::string(what) + ": negative timestamp");
}

inline void require_non_negative(Duration d, const char* what) {
  if (d.ticks < 0) throw std::invalid_argument(std::string(what) + ": negative duration");
}

// Ticks per decimal time unit. Default: one tick is one time unit.
struct TickRate {
  std::int64_t per_unit = 1;

  constexpr TickRate() = default;
  constexpr explicit TickRate(std::int64_t r) : per_unit(r) {}
};

// Parses a non-negative decimal like "12", "3.5" or "0.25" into ticks.
// The value must be exactly representable at the given rate.
std::int64_t parse_ticks(const std::string& text, TickRate rate);

// Exact decimal rendering of ticks at the given rate, trailing zeros trimmed
// ("3", "3.5", "0.25"). Inverse of parse_ticks.
std::string format_ticks(std::int64_t ticks, TickRate rate);

// Fixed-point rendering of the rational (numer / denom) with `decimals`
// digits, rounded half away from zero. Pure integer arithmetic, so the output
// is byte-stable across platforms.
std::string format_ratio(std::int64_t numer, std::int64_t denom, int decimals);

}  // namespace relcomm
