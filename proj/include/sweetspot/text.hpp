#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace sweetspot {

// Locale-independent shortest round-trip formatting. All file and stdout
// numeric output goes through these so byte-identical reruns hold everywhere.
inline std::string fmt(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline std::string fmt(long long value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline std::string fmt(int value) { return fmt(static_cast<long long>(value)); }
inline std::string fmt(std::uint64_t value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace sweetspot
