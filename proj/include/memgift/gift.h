#ifndef MEMGIFT_GIFT_H_
#define MEMGIFT_GIFT_H_

// Reference GIFT-64 / GIFT-128 encryption. This is the software oracle that
// every crossbar result is compared against.
//
// Bit ordering: bit 0 is the least significant bit of the hexadecimal block
// representation, and nibble j covers bits 4j..4j+3. Hex strings are written
// most-significant digit first, so nibble 0 is the last hex digit.

#include <array>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace memgift {

struct CipherVariant {
  int block_bits;
  int rounds;
  // In-nibble bit positions that receive the V and U round-key halves.
  int key_bit_lo;
  int key_bit_hi;

  static constexpr CipherVariant Gift64() { return {64, 28, 0, 1}; }
  static constexpr CipherVariant Gift128() { return {128, 40, 1, 2}; }

  constexpr int nibbles() const { return block_bits / 4; }
  std::string name() const;

  friend constexpr bool operator==(const CipherVariant&,
                                   const CipherVariant&) = default;
};

// Accepts "gift64" / "gift128" (also "64" / "128").
CipherVariant parse_variant(std::string_view name);
CipherVariant variant_for_width(int block_bits);

class CipherState {
 public:
  explicit CipherState(int width = 128);

  // Width is taken from the number of digits (16 or 32).
  static CipherState from_hex(std::string_view hex);
  static CipherState from_hex(std::string_view hex, const CipherVariant& v);

  int width() const { return width_; }
  int nibbles() const { return width_ / 4; }

  bool bit(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set_bit(int i, bool value);
  void flip_bit(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::uint8_t nibble(int j) const {
    return static_cast<std::uint8_t>((words_[j >> 4] >> ((j & 15) * 4)) & 0xF);
  }
  void set_nibble(int j, std::uint8_t value);

  std::uint64_t word(int i) const { return words_[i]; }
  std::string to_hex() const;
  int popcount() const;

  CipherState operator^(const CipherState& other) const;
  friend bool operator==(const CipherState&, const CipherState&) = default;

 private:
  int width_;
  std::array<std::uint64_t, 2> words_{};
};

// 4-bit bijective substitution table.
class SBoxTable {
 public:
  // Throws InputError unless `entries` is a permutation of 0..15.
  explicit SBoxTable(const std::array<std::uint8_t, 16>& entries);

  static SBoxTable Gift();

  std::uint8_t operator[](std::uint8_t x) const { return entries_[x & 0xF]; }
  const std::array<std::uint8_t, 16>& entries() const { return entries_; }
  SBoxTable inverse() const;

  friend bool operator==(const SBoxTable&, const SBoxTable&) = default;

 private:
  std::array<std::uint8_t, 16> entries_;
};

// The 128-bit key state k7||...||k0, word 0 least significant.
class KeyState {
 public:
  KeyState() = default;
  explicit KeyState(const std::array<std::uint16_t, 8>& words) : words_(words) {}

  static KeyState from_hex(std::string_view hex);

  std::uint16_t word(int i) const { return words_[i]; }
  const std::array<std::uint16_t, 8>& words() const { return words_; }
  bool bit(int i) const { return (words_[i >> 4] >> (i & 15)) & 1u; }
  void flip_bit(int i) {
    words_[i >> 4] ^= static_cast<std::uint16_t>(1u << (i & 15));
  }
  std::string to_hex() const;

  friend bool operator==(const KeyState&, const KeyState&) = default;

 private:
  std::array<std::uint16_t, 8> words_{};
};

// U||V. Bit i of V goes to in-nibble position key_bit_lo of nibble i, bit i
// of U to key_bit_hi. Each half is n/4 bits wide.
struct RoundKey {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  friend bool operator==(const RoundKey&, const RoundKey&) = default;
};

// Six-bit LFSR register. Together with the constant '1' at bit n-1 it
// forms the seven round-constant bits.
struct RoundConstant {
  std::uint8_t value = 0;

  friend bool operator==(const RoundConstant&, const RoundConstant&) = default;
};

// Block positions of round-constant bits c0..c5; bit n-1 always gets a 1.
inline constexpr std::array<int, 6> kRoundConstantPositions = {3,  7,  11,
                                                               15, 19, 23};

// Global positions touched by the round key, sorted ascending.
std::vector<int> round_key_positions(const CipherVariant& v);
// The seven global positions touched by the round constant, sorted.
std::vector<int> round_constant_positions(const CipherVariant& v);

// Destination of bit i under the variant's PermBits.
int bit_permutation(const CipherVariant& v, int i);
int inverse_bit_permutation(const CipherVariant& v, int i);

CipherState sub_cells(const CipherState& state, const SBoxTable& sbox);
CipherState perm_bits(const CipherState& state);
CipherState inverse_perm_bits(const CipherState& state);

RoundKey extract_round_key(const KeyState& key, const CipherVariant& v);
KeyState update_key_state(const KeyState& key);
RoundConstant update_round_constant(RoundConstant rc);

CipherState add_round_key_and_constant(const CipherState& state,
                                       const RoundKey& rk, RoundConstant rc);

// Round keys and constants exactly as consumed in rounds 0..rounds-1.
std::vector<RoundKey> round_keys(const KeyState& key, const CipherVariant& v);
std::vector<RoundConstant> round_constants(int rounds);

// Throws InputError if pt.width() != v.block_bits.
CipherState encrypt_block(const CipherState& pt, const KeyState& key,
                          const CipherVariant& v);
CipherState decrypt_block(const CipherState& ct, const KeyState& key,
                          const CipherVariant& v);

struct KatVector {
  KeyState key;
  CipherState plaintext;
  CipherState ciphertext;
  int line = 0;
};

// Lines of the form `key=<32 hex> pt=<hex> ct=<hex>`; blank lines and lines
// starting with '#' are skipped. Throws InputError naming the line number.
std::vector<KatVector> parse_kat(std::istream& in);

}  // namespace memgift

#endif  // MEMGIFT_GIFT_H_
