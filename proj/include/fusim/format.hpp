#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <string>

namespace fusim {

// Shortest round-trip decimal form, locale independent. All CSV/JSON
// numeric output goes through here so reruns are byte identical.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_int(std::int64_t v) {
  std::array<char, 24> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace fusim
