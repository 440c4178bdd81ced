#include "relcomm/time.hpp"

#include <cctype>
#include <cstdlib>

namespace relcomm {

std::int64_t parse_ticks(const std::string& text, TickRate rate) {
  if (text.empty()) throw std::invalid_argument("empty time value");
  std::size_t dot = text.find('.');
  const std::string int_part = dot == std::string::npos ? text : text.substr(0, dot);
  const std::string frac_part = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("malformed time value: " + text);
  for (char c : int_part)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed time value: " + text);
  for (char c : frac_part)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed time value: " + text);

  std::int64_t ticks = 0;
  for (char c : int_part) {
    ticks = ticks * 10 + (c - '0');
    if (ticks < 0) throw std::out_of_range("time value overflows: " + text);
  }
  ticks *= rate.per_unit;

  // Fractional digits: frac / 10^n units must land on a whole tick.
  std::int64_t frac = 0;
  std::int64_t scale = 1;
  for (char c : frac_part) {
    frac = frac * 10 + (c - '0');
    scale *= 10;
  }
  if (frac != 0) {
    const std::int64_t scaled = frac * rate.per_unit;
    if (scaled % scale != 0)
      throw std::invalid_argument("time value " + text +
                                  " is not representable at the configured tick rate");
    ticks += scaled / scale;
  }
  return ticks;
}

std::string format_ticks(std::int64_t ticks, TickRate rate) {
  const std::int64_t r = rate.per_unit;
  std::string sign;
  if (ticks < 0) {
    sign = "-";
    ticks = -ticks;
  }
  std::string out = sign + std::to_string(ticks / r);
  std::int64_t rem = ticks % r;
  if (rem != 0) {
    std::string frac;
    while (rem != 0) {
      rem *= 10;
      frac += static_cast<char>('0' + rem / r);
      rem %= r;
    }
    out += "." + frac;
  }
  return out;
}

std::string format_ratio(std::int64_t numer, std::int64_t denom, int decimals) {
  if (denom == 0) throw std::invalid_argument("format_ratio: zero denominator");
  bool negative = (numer < 0) != (denom < 0) && numer != 0;
  unsigned long long n = static_cast<unsigned long long>(numer < 0 ? -numer : numer);
  unsigned long long d = static_cast<unsigned long long>(denom < 0 ? -denom : denom);

  unsigned long long scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // round(n * scale / d), half away from zero
  unsigned long long scaled = (n * scale + d / 2) / d;

  std::string digits = std::to_string(scaled);
  std::string out = negative ? "-" : "";
  if (decimals == 0) return out + digits;
  if (digits.size() <= static_cast<std::size_t>(decimals))
    digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
  out += digits.substr(0, digits.size() - decimals);
  out += ".";
  out += digits.substr(digits.size() - decimals);
  return out;
}

}  // namespace relcomm
