#include "memgift/gift.h"

#include <algorithm>
#include <bit>
#include <sstream>

#include "memgift/error.h"
#include "memgift/hex.h"

namespace memgift {

std::string CipherVariant::name() const {
  return block_bits == 64 ? "gift64" : "gift128";
}

CipherVariant parse_variant(std::string_view name) {
  if (name == "gift64" || name == "64" || name == "GIFT-64") {
    return CipherVariant::Gift64();
  }
  if (name == "gift128" || name == "128" || name == "GIFT-128") {
    return CipherVariant::Gift128();
  }
  throw ConfigError("unknown cipher variant '" + std::string(name) + "'");
}

CipherVariant variant_for_width(int block_bits) {
  if (block_bits == 64) return CipherVariant::Gift64();
  if (block_bits == 128) return CipherVariant::Gift128();
  throw InputError("unsupported block width " + std::to_string(block_bits));
}

// --- CipherState -----------------------------------------------------------

CipherState::CipherState(int width) : width_(width) {
  if (width != 64 && width != 128) {
    throw InputError("block width must be 64 or 128, got " +
                     std::to_string(width));
  }
}

CipherState CipherState::from_hex(std::string_view hex) {
  if (hex.size() != 16 && hex.size() != 32) {
    throw InputError("block hex must have 16 or 32 digits, got " +
                     std::to_string(hex.size()));
  }
  CipherState s(static_cast<int>(hex.size()) * 4);
  const int n = s.nibbles();
  for (int k = 0; k < n; ++k) {
    s.set_nibble(n - 1 - k, hex_digit_value(hex[k]));
  }
  return s;
}

CipherState CipherState::from_hex(std::string_view hex,
                                  const CipherVariant& v) {
  if (static_cast<int>(hex.size()) * 4 != v.block_bits) {
    throw InputError(v.name() + " block needs " +
                     std::to_string(v.block_bits / 4) + " hex digits, got " +
                     std::to_string(hex.size()));
  }
  return from_hex(hex);
}

void CipherState::set_bit(int i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void CipherState::set_nibble(int j, std::uint8_t value) {
  const int shift = (j & 15) * 4;
  std::uint64_t& w = words_[j >> 4];
  w = (w & ~(std::uint64_t{0xF} << shift)) |
      (std::uint64_t{value & 0xFu} << shift);
}

std::string CipherState::to_hex() const {
  std::string out;
  out.reserve(nibbles());
  for (int j = nibbles() - 1; j >= 0; --j) out.push_back(hex_digit(nibble(j)));
  return out;
}

int CipherState::popcount() const {
  return std::popcount(words_[0]) + std::popcount(words_[1]);
}

CipherState CipherState::operator^(const CipherState& other) const {
  if (other.width_ != width_) throw InputError("XOR of mismatched widths");
  CipherState r(width_);
  r.words_[0] = words_[0] ^ other.words_[0];
  r.words_[1] = words_[1] ^ other.words_[1];
  return r;
}

// --- SBoxTable -------------------------------------------------------------

SBoxTable::SBoxTable(const std::array<std::uint8_t, 16>& entries)
    : entries_(entries) {
  std::array<bool, 16> seen{};
  for (auto e : entries_) {
    if (e > 15 || seen[e]) throw InputError("S-box table is not a bijection");
    seen[e] = true;
  }
}

SBoxTable SBoxTable::Gift() {
  return SBoxTable({0x1, 0xa, 0x4, 0xc, 0x6, 0xf, 0x3, 0x9, 0x2, 0xd, 0xb, 0x7,
                    0x5, 0x0, 0x8, 0xe});
}

SBoxTable SBoxTable::inverse() const {
  std::array<std::uint8_t, 16> inv{};
  for (std::uint8_t x = 0; x < 16; ++x) inv[entries_[x]] = x;
  return SBoxTable(inv);
}

// --- KeyState --------------------------------------------------------------

KeyState KeyState::from_hex(std::string_view hex) {
  if (hex.size() != 32) {
    throw InputError("key hex must have 32 digits, got " +
                     std::to_string(hex.size()));
  }
  std::array<std::uint16_t, 8> words{};
  for (int k = 0; k < 32; ++k) {
    const int nib = 31 - k;
    words[nib / 4] |=
        static_cast<std::uint16_t>(hex_digit_value(hex[k]) << ((nib % 4) * 4));
  }
  return KeyState(words);
}

std::string KeyState::to_hex() const {
  std::string out;
  for (int nib = 31; nib >= 0; --nib) {
    out.push_back(hex_digit((words_[nib / 4] >> ((nib % 4) * 4)) & 0xF));
  }
  return out;
}

// --- Round primitives ------------------------------------------------------

std::vector<int> round_key_positions(const CipherVariant& v) {
  std::vector<int> pos;
  for (int j = 0; j < v.nibbles(); ++j) {
    pos.push_back(4 * j + v.key_bit_lo);
    pos.push_back(4 * j + v.key_bit_hi);
  }
  return pos;
}

std::vector<int> round_constant_positions(const CipherVariant& v) {
  std::vector<int> pos(kRoundConstantPositions.begin(),
                       kRoundConstantPositions.end());
  pos.push_back(v.block_bits - 1);
  return pos;
}

int bit_permutation(const CipherVariant& v, int i) {
  // Bits stay in their plane (i mod 4); the nibble group of four is spread
  // across the block with a stride of n/4.
  const int plane = i % 4;
  const int group = (i % 16) / 4;
  const int quarter = v.block_bits / 4;
  return 4 * (i / 16) + quarter * ((3 * group + plane) % 4) + plane;
}

int inverse_bit_permutation(const CipherVariant& v, int i) {
  for (int k = 0; k < v.block_bits; ++k) {
    if (bit_permutation(v, k) == i) return k;
  }
  throw InputError("bit index out of range");
}

CipherState sub_cells(const CipherState& state, const SBoxTable& sbox) {
  CipherState out(state.width());
  for (int j = 0; j < state.nibbles(); ++j) {
    out.set_nibble(j, sbox[state.nibble(j)]);
  }
  return out;
}

CipherState perm_bits(const CipherState& state) {
  const CipherVariant v = variant_for_width(state.width());
  CipherState out(state.width());
  for (int i = 0; i < state.width(); ++i) {
    out.set_bit(bit_permutation(v, i), state.bit(i));
  }
  return out;
}

CipherState inverse_perm_bits(const CipherState& state) {
  const CipherVariant v = variant_for_width(state.width());
  CipherState out(state.width());
  for (int i = 0; i < state.width(); ++i) {
    out.set_bit(i, state.bit(bit_permutation(v, i)));
  }
  return out;
}

RoundKey extract_round_key(const KeyState& key, const CipherVariant& v) {
  if (v.block_bits == 64) return {key.word(1), key.word(0)};
  return {(std::uint32_t{key.word(5)} << 16) | key.word(4),
          (std::uint32_t{key.word(1)} << 16) | key.word(0)};
}

KeyState update_key_state(const KeyState& key) {
  // 32-bit right rotation of the whole state, then the two top words are
  // rotated right by 2 and 12 bits.
  std::array<std::uint16_t, 8> w{};
  for (int i = 0; i < 6; ++i) w[i] = key.word(i + 2);
  w[7] = std::rotr(key.word(1), 2);
  w[6] = std::rotr(key.word(0), 12);
  return KeyState(w);
}

RoundConstant update_round_constant(RoundConstant rc) {
  const std::uint8_t c = rc.value & 0x3F;
  std::uint8_t next = static_cast<std::uint8_t>(((c << 1) | (c >> 5)) & 0x3F);
  const std::uint8_t msb = (next >> 5) & 1u;
  next ^= static_cast<std::uint8_t>(msb ^ 1u);
  return {next};
}

CipherState add_round_key_and_constant(const CipherState& state,
                                       const RoundKey& rk, RoundConstant rc) {
  const CipherVariant v = variant_for_width(state.width());
  CipherState out = state;
  for (int j = 0; j < v.nibbles(); ++j) {
    if ((rk.v >> j) & 1u) out.flip_bit(4 * j + v.key_bit_lo);
    if ((rk.u >> j) & 1u) out.flip_bit(4 * j + v.key_bit_hi);
  }
  for (int k = 0; k < 6; ++k) {
    if ((rc.value >> k) & 1u) out.flip_bit(kRoundConstantPositions[k]);
  }
  out.flip_bit(v.block_bits - 1);
  return out;
}

std::vector<RoundKey> round_keys(const KeyState& key, const CipherVariant& v) {
  std::vector<RoundKey> keys;
  keys.reserve(v.rounds);
  KeyState ks = key;
  for (int r = 0; r < v.rounds; ++r) {
    keys.push_back(extract_round_key(ks, v));
    ks = update_key_state(ks);
  }
  return keys;
}

std::vector<RoundConstant> round_constants(int rounds) {
  std::vector<RoundConstant> rcs;
  rcs.reserve(rounds);
  RoundConstant rc{};
  for (int r = 0; r < rounds; ++r) {
    rc = update_round_constant(rc);
    rcs.push_back(rc);
  }
  return rcs;
}

namespace {

void check_width(const CipherState& s, const CipherVariant& v) {
  if (s.width() != v.block_bits) {
    throw InputError("block is " + std::to_string(s.width()) + " bits but " +
                     v.name() + " expects " + std::to_string(v.block_bits));
  }
}

}  // namespace

CipherState encrypt_block(const CipherState& pt, const KeyState& key,
                          const CipherVariant& v) {
  check_width(pt, v);
  const SBoxTable sbox = SBoxTable::Gift();
  CipherState state = pt;
  KeyState ks = key;
  RoundConstant rc{};
  for (int r = 0; r < v.rounds; ++r) {
    state = perm_bits(sub_cells(state, sbox));
    rc = update_round_constant(rc);
    state = add_round_key_and_constant(state, extract_round_key(ks, v), rc);
    ks = update_key_state(ks);
  }
  return state;
}

CipherState decrypt_block(const CipherState& ct, const KeyState& key,
                          const CipherVariant& v) {
  check_width(ct, v);
  const SBoxTable inv = SBoxTable::Gift().inverse();
  const auto rks = round_keys(key, v);
  const auto rcs = round_constants(v.rounds);
  CipherState state = ct;
  for (int r = v.rounds - 1; r >= 0; --r) {
    state = add_round_key_and_constant(state, rks[r], rcs[r]);
    state = sub_cells(inverse_perm_bits(state), inv);
  }
  return state;
}

// --- KAT parsing -----------------------------------------------------------

std::vector<KatVector> parse_kat(std::istream& in) {
  std::vector<KatVector> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string tok, key, pt, ct;
    while (fields >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) {
        throw InputError("KAT line " + std::to_string(lineno) +
                         ": expected name=value, got '" + tok + "'");
      }
      const std::string name = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      if (name == "key") {
        key = value;
      } else if (name == "pt") {
        pt = value;
      } else if (name == "ct") {
        ct = value;
      } else {
        throw InputError("KAT line " + std::to_string(lineno) +
                         ": unknown field '" + name + "'");
      }
    }
    if (key.empty() || pt.empty() || ct.empty()) {
      throw InputError("KAT line " + std::to_string(lineno) +
                       ": needs key=, pt= and ct=");
    }
    try {
      KatVector kv{KeyState::from_hex(key), CipherState::from_hex(pt),
                   CipherState::from_hex(ct), lineno};
      if (kv.plaintext.width() != kv.ciphertext.width()) {
        throw InputError("pt and ct widths differ");
      }
      out.push_back(std::move(kv));
    } catch (const InputError& e) {
      throw InputError("KAT line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace memgift
