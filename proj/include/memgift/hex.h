#ifndef MEMGIFT_HEX_H_
#define MEMGIFT_HEX_H_

#include <cstdint>
#include <string>

#include "memgift/error.h"

namespace memgift {

inline char hex_digit(unsigned value) { return "0123456789abcdef"[value & 0xF]; }

inline std::uint8_t hex_digit_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
  throw InputError(std::string("invalid hex digit '") + c + "'");
}

}  // namespace memgift

#endif  // MEMGIFT_HEX_H_
