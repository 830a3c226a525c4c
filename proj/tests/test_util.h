#ifndef MEMGIFT_TESTS_TEST_UTIL_H_
#define MEMGIFT_TESTS_TEST_UTIL_H_

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "memgift/gift.h"

namespace memgift::testing {

inline KeyState random_key(std::mt19937_64& rng) {
  std::array<std::uint16_t, 8> w{};
  for (auto& x : w) x = static_cast<std::uint16_t>(rng());
  return KeyState(w);
}

inline CipherState random_block(std::mt19937_64& rng, int width) {
  CipherState s(width);
  for (int j = 0; j < s.nibbles(); ++j) {
    s.set_nibble(j, static_cast<std::uint8_t>(rng() & 0xF));
  }
  return s;
}

inline std::vector<KatVector> load_kat(const std::string& name) {
  std::ifstream in(std::string(MEMGIFT_TEST_DATA) + "/" + name);
  return parse_kat(in);
}

inline std::vector<KatVector> all_kats() {
  auto v = load_kat("gift64_kat.txt");
  auto w = load_kat("gift128_kat.txt");
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

}  // namespace memgift::testing

#endif  // MEMGIFT_TESTS_TEST_UTIL_H_
