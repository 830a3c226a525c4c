#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "memgift/error.h"
#include "memgift/gift.h"
#include "test_util.h"

namespace memgift {
namespace {

using testing::load_kat;
using testing::random_block;
using testing::random_key;

// Published GIFT-64 bit permutation table.
constexpr int kP64[64] = {
    0,  17, 34, 51, 48, 1,  18, 35, 32, 49, 2,  19, 16, 33, 50, 3,
    4,  21, 38, 55, 52, 5,  22, 39, 36, 53, 6,  23, 20, 37, 54, 7,
    8,  25, 42, 59, 56, 9,  26, 43, 40, 57, 10, 27, 24, 41, 58, 11,
    12, 29, 46, 63, 60, 13, 30, 47, 44, 61, 14, 31, 28, 45, 62, 15};

// Published round-constant sequence, one value per round.
constexpr std::uint8_t kRoundConstants[40] = {
    0x01, 0x03, 0x07, 0x0F, 0x1F, 0x3E, 0x3D, 0x3B, 0x37, 0x2F,
    0x1E, 0x3C, 0x39, 0x33, 0x27, 0x0E, 0x1D, 0x3A, 0x35, 0x2B,
    0x16, 0x2C, 0x18, 0x30, 0x21, 0x02, 0x05, 0x0B, 0x17, 0x2E,
    0x1C, 0x38, 0x31, 0x23, 0x06, 0x0D, 0x1B, 0x36, 0x2D, 0x1A};

TEST(Kat, Gift64Vectors) {
  const auto kats = load_kat("gift64_kat.txt");
  ASSERT_GE(kats.size(), 3u);
  for (const auto& kv : kats) {
    EXPECT_EQ(encrypt_block(kv.plaintext, kv.key, CipherVariant::Gift64()),
              kv.ciphertext)
        << "line " << kv.line;
    EXPECT_EQ(decrypt_block(kv.ciphertext, kv.key, CipherVariant::Gift64()),
              kv.plaintext);
  }
}

TEST(Kat, Gift128Vectors) {
  const auto kats = load_kat("gift128_kat.txt");
  ASSERT_GE(kats.size(), 20u);
  for (const auto& kv : kats) {
    EXPECT_EQ(encrypt_block(kv.plaintext, kv.key, CipherVariant::Gift128()),
              kv.ciphertext)
        << "line " << kv.line;
    EXPECT_EQ(decrypt_block(kv.ciphertext, kv.key, CipherVariant::Gift128()),
              kv.plaintext);
  }
}

TEST(SBox, TableAndInverse) {
  const SBoxTable s = SBoxTable::Gift();
  const std::uint8_t expect[16] = {0x1, 0xa, 0x4, 0xc, 0x6, 0xf, 0x3, 0x9,
                                   0x2, 0xd, 0xb, 0x7, 0x5, 0x0, 0x8, 0xe};
  for (int x = 0; x < 16; ++x) EXPECT_EQ(s[x], expect[x]);
  const SBoxTable inv = s.inverse();
  for (int x = 0; x < 16; ++x) EXPECT_EQ(inv[s[x]], x);
}

TEST(SBox, RejectsNonBijection) {
  std::array<std::uint8_t, 16> t{};
  for (int i = 0; i < 16; ++i) t[i] = static_cast<std::uint8_t>(i);
  t[3] = 2;
  EXPECT_THROW(SBoxTable{t}, InputError);
}

TEST(Permutation, Gift64MatchesPublishedTable) {
  for (int i = 0; i < 64; ++i) {
    EXPECT_EQ(bit_permutation(CipherVariant::Gift64(), i), kP64[i]) << i;
  }
}

TEST(Permutation, BijectivePlanePreservingInvertible) {
  for (auto v : {CipherVariant::Gift64(), CipherVariant::Gift128()}) {
    std::set<int> seen;
    for (int i = 0; i < v.block_bits; ++i) {
      const int p = bit_permutation(v, i);
      seen.insert(p);
      EXPECT_EQ(p % 4, i % 4);
      EXPECT_EQ(inverse_bit_permutation(v, p), i);
    }
    EXPECT_EQ(static_cast<int>(seen.size()), v.block_bits);
  }
}

TEST(Permutation, PermBitsMovesUnitVectors) {
  const CipherVariant v = CipherVariant::Gift128();
  for (int i = 0; i < 128; ++i) {
    CipherState s(128);
    s.set_bit(i, true);
    const CipherState p = perm_bits(s);
    EXPECT_EQ(p.popcount(), 1);
    EXPECT_TRUE(p.bit(bit_permutation(v, i)));
    EXPECT_EQ(inverse_perm_bits(p), s);
  }
}

TEST(RoundConstant, MatchesPublishedSequence) {
  const auto rc = round_constants(40);
  ASSERT_EQ(rc.size(), 40u);
  for (int r = 0; r < 40; ++r) EXPECT_EQ(rc[r].value, kRoundConstants[r]) << r;
}

TEST(RoundConstant, NoImmediateRepeats) {
  const auto rc = round_constants(40);
  for (std::size_t r = 1; r < rc.size(); ++r) EXPECT_NE(rc[r].value, rc[r - 1].value);
}

TEST(RoundConstant, SevenPositionsIncludingTopBit) {
  for (auto v : {CipherVariant::Gift64(), CipherVariant::Gift128()}) {
    const auto pos = round_constant_positions(v);
    ASSERT_EQ(pos.size(), 7u);
    EXPECT_EQ(pos.back(), v.block_bits - 1);
  }
}

TEST(RoundKey, PositionsAuditAndNoOverlapWithConstant) {
  for (auto v : {CipherVariant::Gift64(), CipherVariant::Gift128()}) {
    const auto rk = round_key_positions(v);
    const auto rc = round_constant_positions(v);
    EXPECT_EQ(rk.size(), static_cast<std::size_t>(2 * v.nibbles()));
    std::set<int> all(rk.begin(), rk.end());
    all.insert(rc.begin(), rc.end());
    EXPECT_EQ(all.size(), static_cast<std::size_t>(2 * v.nibbles() + 7));
  }
}

TEST(RoundKey, FirstRoundKeyTakesLowWords) {
  std::array<std::uint16_t, 8> w{};
  for (int i = 0; i < 8; ++i) w[i] = static_cast<std::uint16_t>(0x1111 * (i + 1));
  const KeyState k(w);
  const RoundKey r64 = extract_round_key(k, CipherVariant::Gift64());
  EXPECT_EQ(r64.u, w[1]);
  EXPECT_EQ(r64.v, w[0]);
  const RoundKey r128 = extract_round_key(k, CipherVariant::Gift128());
  EXPECT_EQ(r128.u, (std::uint32_t{w[5]} << 16) | w[4]);
  EXPECT_EQ(r128.v, (std::uint32_t{w[1]} << 16) | w[0]);
}

TEST(KeySchedule, UpdateRotatesAndShiftsWords) {
  std::array<std::uint16_t, 8> w{};
  for (int i = 0; i < 8; ++i) w[i] = static_cast<std::uint16_t>(0x0101 * (i + 3) + 0x8000);
  const KeyState next = update_key_state(KeyState(w));
  auto rotr = [](std::uint16_t x, int n) {
    return static_cast<std::uint16_t>((x >> n) | (x << (16 - n)));
  };
  for (int i = 0; i < 6; ++i) EXPECT_EQ(next.word(i), w[i + 2]);
  EXPECT_EQ(next.word(7), rotr(w[1], 2));
  EXPECT_EQ(next.word(6), rotr(w[0], 12));
}

TEST(Properties, DecryptInvertsEncrypt) {
  std::mt19937_64 rng(11);
  for (auto v : {CipherVariant::Gift64(), CipherVariant::Gift128()}) {
    for (int t = 0; t < 200; ++t) {
      const KeyState k = random_key(rng);
      const CipherState pt = random_block(rng, v.block_bits);
      EXPECT_EQ(decrypt_block(encrypt_block(pt, k, v), k, v), pt);
    }
  }
}

TEST(Properties, PlaintextAvalanche) {
  std::mt19937_64 rng(12);
  for (auto v : {CipherVariant::Gift64(), CipherVariant::Gift128()}) {
    double total = 0;
    int trials = 0;
    for (int t = 0; t < 50; ++t) {
      const KeyState k = random_key(rng);
      const CipherState pt = random_block(rng, v.block_bits);
      const CipherState ct = encrypt_block(pt, k, v);
      for (int i = 0; i < v.block_bits; i += 7) {
        CipherState p2 = pt;
        p2.flip_bit(i);
        total += (encrypt_block(p2, k, v) ^ ct).popcount();
        ++trials;
      }
    }
    const double mean = total / trials;
    EXPECT_NEAR(mean, v.block_bits / 2.0, v.block_bits * 0.05) << v.name();
  }
}

TEST(Properties, KeyAvalanche) {
  std::mt19937_64 rng(13);
  const CipherVariant v = CipherVariant::Gift128();
  double total = 0;
  int trials = 0;
  for (int t = 0; t < 20; ++t) {
    const KeyState k = random_key(rng);
    const CipherState pt = random_block(rng, 128);
    const CipherState ct = encrypt_block(pt, k, v);
    for (int i = 0; i < 128; i += 5) {
      KeyState k2 = k;
      k2.flip_bit(i);
      total += (encrypt_block(pt, k2, v) ^ ct).popcount();
      ++trials;
    }
  }
  EXPECT_NEAR(total / trials, 64.0, 6.4);
}

TEST(Hex, RoundTripAndBitOrder) {
  const CipherState s = CipherState::from_hex("0123456789abcdef");
  EXPECT_EQ(s.width(), 64);
  EXPECT_EQ(s.nibble(0), 0xf);
  EXPECT_EQ(s.nibble(15), 0x0);
  EXPECT_TRUE(s.bit(0));
  EXPECT_EQ(s.to_hex(), "0123456789abcdef");
  EXPECT_EQ(CipherState::from_hex("0123456789ABCDEF").to_hex(), "0123456789abcdef");
  const KeyState k = KeyState::from_hex("000102030405060708090a0b0c0d0e0f");
  EXPECT_EQ(k.word(0), 0x0e0f);
  EXPECT_EQ(k.word(7), 0x0001);
  EXPECT_EQ(k.to_hex(), "000102030405060708090a0b0c0d0e0f");
}

TEST(Hex, RejectsMalformedInput) {
  EXPECT_THROW(CipherState::from_hex("0123"), InputError);
  EXPECT_THROW(CipherState::from_hex("0123456789abcdeg"), InputError);
  EXPECT_THROW(CipherState::from_hex("0123456789abcdef", CipherVariant::Gift128()),
               InputError);
  EXPECT_THROW(KeyState::from_hex("00"), InputError);
  EXPECT_THROW(encrypt_block(CipherState(64), KeyState{}, CipherVariant::Gift128()),
               InputError);
}

TEST(KatParser, ReportsLineNumber) {
  std::istringstream in(
      "# comment\n\nkey=00000000000000000000000000000000 pt=00 ct=00\n");
  try {
    parse_kat(in);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Variant, Parsing) {
  EXPECT_EQ(parse_variant("gift64"), CipherVariant::Gift64());
  EXPECT_EQ(parse_variant("128"), CipherVariant::Gift128());
  EXPECT_ANY_THROW(parse_variant("gift96"));
  EXPECT_EQ(variant_for_width(64), CipherVariant::Gift64());
}

}  // namespace
}  // namespace memgift
