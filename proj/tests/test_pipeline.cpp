#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "memgift/error.h"
#include "memgift/pipeline.h"
#include "test_util.h"

namespace memgift {
namespace {

using testing::random_block;
using testing::random_key;

SessionConfig config_for(CipherVariant v, SaScheme scheme,
                         FeedbackMode mode = FeedbackMode::kPermuted) {
  SessionConfig c;
  c.variant = v;
  c.scheme = scheme;
  c.mode = mode;
  return c;
}

TEST(Pipeline, IdealPermutedMatchesReference) {
  std::mt19937_64 rng(31);
  for (auto v : {CipherVariant::Gift64(), CipherVariant::Gift128()}) {
    for (auto scheme : {SaScheme::kSxor, SaScheme::kDxor}) {
      for (int t = 0; t < 40; ++t) {
        const KeyState k = random_key(rng);
        EncryptionSession s(k, config_for(v, scheme));
        for (int b = 0; b < 3; ++b) {
          const CipherState pt = random_block(rng, v.block_bits);
          const EncryptResult r = s.encrypt(pt);
          EXPECT_EQ(r.ciphertext, encrypt_block(pt, k, v));
          EXPECT_EQ(r.sense_errors, 0u);
        }
      }
    }
  }
}

TEST(Pipeline, KnownAnswerVectors) {
  for (const auto& kv : testing::all_kats()) {
    const CipherVariant v = variant_for_width(kv.plaintext.width());
    for (auto scheme : {SaScheme::kSxor, SaScheme::kDxor}) {
      EncryptionSession s(kv.key, config_for(v, scheme));
      EXPECT_EQ(s.encrypt(kv.plaintext).ciphertext, kv.ciphertext) << kv.line;
    }
  }
}

TEST(Pipeline, EventCountsPerGift128Block) {
  for (auto scheme : {SaScheme::kSxor, SaScheme::kDxor}) {
    EncryptionSession s(KeyState{}, config_for(CipherVariant::Gift128(), scheme));
    // 32 slices x 64 S-box cells, 25 slices x 40 x 2 and 7 slices x 40 x 3 key cells.
    EXPECT_EQ(s.events().count(EventKind::kCellWrite), 32u * 64 + 25u * 80 + 7u * 120);
    const EventLog e = s.encrypt(CipherState(128)).events;
    const bool sxor = scheme == SaScheme::kSxor;
    // Per round: 64 round-key columns and 7 constant columns are XOR reads.
    EXPECT_EQ(e.count(sxor ? EventKind::kSxorSense : EventKind::kDxorSense), 71u * 40);
    EXPECT_EQ(e.count(sxor ? EventKind::kRoSSense : EventKind::kRoDSense), 57u * 40);
    EXPECT_EQ(e.count(sxor ? EventKind::kDxorSense : EventKind::kSxorSense), 0u);
    EXPECT_EQ(e.count(EventKind::kDecoderCycle), 32u * 40);
    EXPECT_EQ(e.count(EventKind::kReadCycle), 40u);
    EXPECT_EQ(e.count(EventKind::kSelectorCycle), 40u);
    EXPECT_EQ(e.count(EventKind::kRegisterCycle), 40u);
    EXPECT_EQ(e.count(EventKind::kCellRead), (71u * 2 + 57u) * 40);
    EXPECT_EQ(e.count(EventKind::kCellWrite), 0u);
    EXPECT_TRUE(e.complete());
  }
}

TEST(Pipeline, ReadsLeaveCellsUntouched) {
  std::mt19937_64 rng(32);
  SessionConfig c = config_for(CipherVariant::Gift128(), SaScheme::kDxor);
  c.device.sigma_c2c = 0.05;
  EncryptionSession s(random_key(rng), c);
  std::vector<std::vector<std::uint8_t>> before;
  std::vector<double> resistances;
  for (const auto& slice : s.slices()) {
    before.push_back(slice.logic_snapshot());
    resistances.push_back(slice.sb_cell(7, 1).resistance);
  }
  for (int b = 0; b < 5; ++b) s.encrypt(random_block(rng, 128));
  for (std::size_t j = 0; j < s.slices().size(); ++j) {
    EXPECT_EQ(s.slices()[j].logic_snapshot(), before[j]);
    EXPECT_EQ(s.slices()[j].sb_cell(7, 1).resistance, resistances[j]);
  }
}

TEST(Pipeline, StepRoundContracts) {
  EncryptionSession s(KeyState{}, config_for(CipherVariant::Gift64(), SaScheme::kDxor));
  EXPECT_THROW(s.step_round(CipherState(128)), InputError);
  CipherState st(64);
  for (int r = 0; r < 28; ++r) st = s.step_round(st);
  EXPECT_EQ(st, encrypt_block(CipherState(64), KeyState{}, CipherVariant::Gift64()));
  EXPECT_THROW(s.step_round(st), SimulationError);
  s.reset_rounds();
  EXPECT_NO_THROW(s.step_round(st));
  EXPECT_THROW(s.encrypt(CipherState(128)), InputError);
}

TEST(Pipeline, RoundTraceFollowsReferenceRounds) {
  std::mt19937_64 rng(33);
  const CipherVariant v = CipherVariant::Gift128();
  const KeyState k = random_key(rng);
  const CipherState pt = random_block(rng, 128);
  EncryptionSession s(k, config_for(v, SaScheme::kSxor));
  const EncryptResult r = s.encrypt(pt, TraceLevel::kRounds);
  ASSERT_EQ(r.rounds.size(), 40u);
  const auto rks = round_keys(k, v);
  const auto rcs = round_constants(v.rounds);
  CipherState ref = pt;
  for (int i = 0; i < 40; ++i) {
    EXPECT_EQ(r.rounds[i].pre_state, ref);
    ref = add_round_key_and_constant(perm_bits(sub_cells(ref, SBoxTable::Gift())),
                                     rks[i], rcs[i]);
    EXPECT_EQ(r.rounds[i].post_state, ref) << "round " << i;
  }
}

TEST(Pipeline, LocalModeConfinesDifferencesToOneSlice) {
  std::mt19937_64 rng(34);
  const CipherVariant v = CipherVariant::Gift128();
  const KeyState k = random_key(rng);
  EncryptionSession s(k, config_for(v, SaScheme::kDxor, FeedbackMode::kLocal));
  const CipherState pt = random_block(rng, 128);
  EXPECT_NE(s.encrypt(pt).ciphertext, encrypt_block(pt, k, v));
  for (int bit : {0, 45, 127}) {
    CipherState pt2 = pt;
    pt2.flip_bit(bit);
    const auto a = s.encrypt(pt, TraceLevel::kRounds);
    const auto b = s.encrypt(pt2, TraceLevel::kRounds);
    for (int r = 0; r < 40; ++r) {
      for (int j = 0; j < 32; ++j) {
        if (j == bit / 4) {
          EXPECT_NE(a.rounds[r].outputs[j], b.rounds[r].outputs[j]);
        } else {
          EXPECT_EQ(a.rounds[r].outputs[j], b.rounds[r].outputs[j]);
        }
      }
    }
  }
}

TEST(Pipeline, LargeVariationProducesSenseErrors) {
  SessionConfig c = config_for(CipherVariant::Gift128(), SaScheme::kDxor);
  c.device.sigma_c2c = 0.4;
  EncryptionSession s(KeyState{}, c);
  const EncryptResult r = s.encrypt(CipherState(128));
  EXPECT_EQ(r.sensed_bits, 128u * 40);
  EXPECT_GT(r.sense_errors, 0u);
}

std::string traces(std::uint64_t seed, std::string* analog) {
  SessionConfig c = config_for(CipherVariant::Gift128(), SaScheme::kSxor);
  c.device.sigma_c2c = 0.05;
  c.device.sigma_d2d = 0.05;
  c.device.seed = seed;
  EncryptionSession s(KeyState::from_hex("000102030405060708090a0b0c0d0e0f"), c);
  const EncryptResult r = s.encrypt(CipherState(128), TraceLevel::kAnalog);
  std::ostringstream rounds, volts;
  write_round_trace(rounds, s, r);
  write_analog_trace(volts, r);
  *analog = volts.str();
  return rounds.str();
}

TEST(Trace, DeterministicUnderSeed) {
  std::string a1, a2, a3;
  const std::string t1 = traces(5, &a1);
  const std::string t2 = traces(5, &a2);
  const std::string t3 = traces(6, &a3);
  EXPECT_EQ(t1, t2);
  EXPECT_EQ(a1, a2);
  EXPECT_NE(a1, a3);
}

TEST(Trace, RecordShapes) {
  std::string analog;
  const std::string rounds = traces(1, &analog);
  std::istringstream in(rounds);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (n == 0) EXPECT_EQ(j["type"], "session");
    if (n >= 1 && n <= 40) EXPECT_EQ(j["round"], n - 1);
    ++n;
  }
  EXPECT_EQ(n, 42);
  std::istringstream ain(analog);
  int m = 0;
  while (std::getline(ain, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("nodes"));
    EXPECT_EQ(j["nodes"].size(), j["xor"].get<bool>() ? 2u : 1u);
    ++m;
  }
  EXPECT_EQ(m, 40 * 32 * 4);
}

}  // namespace
}  // namespace memgift
