#ifndef MEMGIFT_PIPELINE_H_
#define MEMGIFT_PIPELINE_H_

// Full crossbar encryption session: program every slice once, then run one
// read cycle per round with the output register fed back through the
// inter-round wiring.

#include <cstdint>
#include <ostream>
#include <vector>

#include "memgift/crossbar.h"
#include "memgift/events.h"
#include "memgift/gift.h"
#include "memgift/layout.h"

namespace memgift {

struct SessionConfig {
  CipherVariant variant = CipherVariant::Gift128();
  SaScheme scheme = SaScheme::kDxor;
  FeedbackMode mode = FeedbackMode::kPermuted;
  DeviceParams device;
  SenseAmpParams sense;
};

enum class TraceLevel { kNone, kRounds, kAnalog };

struct RoundTrace {
  int round = 0;
  CipherState pre_state;
  std::vector<std::uint8_t> inputs;   // per slice
  std::vector<std::uint8_t> outputs;  // per slice, before the wiring
  std::vector<RoundReadout> analog;   // filled at TraceLevel::kAnalog
  CipherState post_state;
};

struct EncryptResult {
  CipherState ciphertext;
  std::vector<RoundTrace> rounds;
  EventLog events;  // this block only
  std::uint64_t sensed_bits = 0;
  std::uint64_t sense_errors = 0;  // SA decisions differing from the stored Boolean value
};

class EncryptionSession {
 public:
  // Compiles the layout and programs every slice (the only write phase).
  EncryptionSession(const KeyState& key, const SessionConfig& config);

  const SessionConfig& config() const { return config_; }
  const LayoutBundle& layout() const { return layout_; }
  const std::vector<SliceArray>& slices() const { return slices_; }
  const SBoxTable& programmed_sbox() const { return sbox_; }
  std::uint8_t sbox_mask() const { return sbox_mask_; }

  int round_counter() const { return round_counter_; }
  const CipherState& output_register() const { return register_; }
  // Cumulative since initialization, write phase included.
  const EventLog& events() const { return events_; }

  // Restarts the round selector; the next step_round reads key row 0.
  void reset_rounds();

  // One read cycle over all slices. Throws SimulationError after the final
  // round and InputError on a width mismatch.
  CipherState step_round(const CipherState& state, RoundTrace* trace = nullptr,
                         TraceLevel level = TraceLevel::kRounds);

  // Resets the selector and runs every round from `plaintext`.
  EncryptResult encrypt(const CipherState& plaintext,
                        TraceLevel level = TraceLevel::kNone);

  // Rewrites the 16x4 S-box region of every slice. `mask_tag` records which
  // nibble mask the new table carries (0 for the plain table).
  void reprogram_sbox(const SBoxTable& sbox, std::uint8_t mask_tag);

 private:
  SessionConfig config_;
  LayoutBundle layout_;
  PermWiring wiring_;
  SBoxTable sbox_ = SBoxTable::Gift();
  std::uint8_t sbox_mask_ = 0;
  std::vector<SliceArray> slices_;
  RoundSelector selector_;
  int round_counter_ = 0;
  CipherState register_;
  EventLog events_;
  std::uint64_t sensed_bits_ = 0;
  std::uint64_t sense_errors_ = 0;
};

EncryptionSession initialize_session(const KeyState& key,
                                     const SessionConfig& config);

// JSON lines: a session header record, then one record per round.
void write_round_trace(std::ostream& out, const EncryptionSession& session,
                       const EncryptResult& result);
// JSON lines: one record per sensed column per read.
void write_analog_trace(std::ostream& out, const EncryptResult& result);

}  // namespace memgift

#endif  // MEMGIFT_PIPELINE_H_
