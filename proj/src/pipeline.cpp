#include "memgift/pipeline.h"

#include <json.hpp>

#include "memgift/error.h"

namespace memgift {

EncryptionSession::EncryptionSession(const KeyState& key,
                                     const SessionConfig& config)
    : config_(config),
      layout_(compile_layout(key, config.variant)),
      wiring_(config.mode == FeedbackMode::kPermuted
                  ? layout_.wiring
                  : PermWiring::Local(config.variant)),
      register_(config.variant.block_bits),
      events_(EventLog::Zeroed(config.scheme)) {
  config_.device.validate();
  config_.sense.validate(config_.device.vdd);
  slices_.reserve(layout_.slices.size());
  for (const auto& rows : layout_.slices) {
    slices_.push_back(program_slice(sbox_, rows, config_.variant, config_.device));
    events_.add(EventKind::kCellWrite, slices_.back().writes());
  }
}

EncryptionSession initialize_session(const KeyState& key,
                                     const SessionConfig& config) {
  return EncryptionSession(key, config);
}

void EncryptionSession::reset_rounds() {
  selector_.reset();
  round_counter_ = 0;
}

CipherState EncryptionSession::step_round(const CipherState& state,
                                          RoundTrace* trace, TraceLevel level) {
  const CipherVariant& v = config_.variant;
  if (round_counter_ >= v.rounds) {
    throw SimulationError("all " + std::to_string(v.rounds) +
                          " rounds already executed");
  }
  if (state.width() != v.block_bits) {
    throw InputError("state width does not match " + v.name());
  }
  const int round = selector_.count();
  const bool sxor = config_.scheme == SaScheme::kSxor;

  if (trace) {
    trace->round = round;
    trace->pre_state = state;
    trace->inputs.assign(v.nibbles(), 0);
    trace->outputs.assign(v.nibbles(), 0);
    trace->analog.clear();
  }

  CipherState next(v.block_bits);
  for (int j = 0; j < v.nibbles(); ++j) {
    SliceArray& slice = slices_[j];
    const std::uint8_t in = state.nibble(j);
    const RoundReadout r = read_round(slice, in, round, config_.scheme,
                                      config_.sense, config_.device);
    for (int b = 0; b < 4; ++b) {
      next.set_bit(wiring_(4 * j + b), (r.output >> b) & 1u);
      const ColumnReading& c = r.columns[b];
      events_.add(c.is_xor ? (sxor ? EventKind::kSxorSense : EventKind::kDxorSense)
                           : (sxor ? EventKind::kRoSSense : EventKind::kRoDSense));
      events_.add(EventKind::kCellRead, c.is_xor ? 2 : 1);
      ++sensed_bits_;
      if (c.sense.bit != c.expected) ++sense_errors_;
    }
    events_.add(EventKind::kDecoderCycle);
    if (trace) {
      trace->inputs[j] = in;
      trace->outputs[j] = r.output;
      if (level == TraceLevel::kAnalog) trace->analog.push_back(r);
    }
  }
  events_.add(EventKind::kReadCycle);
  events_.add(EventKind::kSelectorCycle);
  events_.add(EventKind::kRegisterCycle);

  register_ = next;
  selector_.advance();
  ++round_counter_;
  if (trace) trace->post_state = next;
  return next;
}

EncryptResult EncryptionSession::encrypt(const CipherState& plaintext,
                                         TraceLevel level) {
  if (plaintext.width() != config_.variant.block_bits) {
    throw InputError("plaintext is " + std::to_string(plaintext.width()) +
                     " bits but " + config_.variant.name() + " expects " +
                     std::to_string(config_.variant.block_bits));
  }
  reset_rounds();
  const EventLog before = events_;
  const std::uint64_t bits_before = sensed_bits_;
  const std::uint64_t errors_before = sense_errors_;

  EncryptResult result;
  CipherState state = plaintext;
  for (int r = 0; r < config_.variant.rounds; ++r) {
    if (level == TraceLevel::kNone) {
      state = step_round(state);
    } else {
      RoundTrace t;
      state = step_round(state, &t, level);
      result.rounds.push_back(std::move(t));
    }
  }
  result.ciphertext = register_;
  result.events = events_.since(before);
  result.sensed_bits = sensed_bits_ - bits_before;
  result.sense_errors = sense_errors_ - errors_before;
  return result;
}

void EncryptionSession::reprogram_sbox(const SBoxTable& sbox,
                                       std::uint8_t mask_tag) {
  for (auto& slice : slices_) {
    const auto before = slice.writes();
    slice.program_sbox(sbox, config_.device);
    events_.add(EventKind::kCellWrite, slice.writes() - before);
  }
  sbox_ = sbox;
  sbox_mask_ = mask_tag & 0xF;
}

// --- Trace export ----------------------------------------------------------

namespace {

CipherState nibbles_to_state(const std::vector<std::uint8_t>& nibbles) {
  CipherState s(static_cast<int>(nibbles.size()) * 4);
  for (std::size_t j = 0; j < nibbles.size(); ++j) {
    s.set_nibble(static_cast<int>(j), nibbles[j]);
  }
  return s;
}

}  // namespace

void write_round_trace(std::ostream& out, const EncryptionSession& session,
                       const EncryptResult& result) {
  const SessionConfig& c = session.config();
  nlohmann::ordered_json header = {
      {"type", "session"},
      {"variant", c.variant.name()},
      {"rounds", c.variant.rounds},
      {"scheme", to_string(c.scheme)},
      {"feedback", to_string(c.mode)},
      {"topology", to_string(c.sense.topology)},
      {"sbox_mask", session.sbox_mask()},
      {"device",
       {{"r_lrs", c.device.r_lrs},
        {"r_hrs", c.device.r_hrs},
        {"wire_r_per_cell", c.device.wire_r_per_cell},
        {"r_access", c.device.r_access},
        {"sigma_d2d", c.device.sigma_d2d},
        {"sigma_c2c", c.device.sigma_c2c},
        {"vdd", c.device.vdd},
        {"v_read", c.device.v_read},
        {"seed", c.device.seed}}},
  };
  out << header.dump() << '\n';
  for (const auto& t : result.rounds) {
    nlohmann::ordered_json rec = {
        {"type", "round"},
        {"round", t.round},
        {"input", t.pre_state.to_hex()},
        {"slice_outputs", nibbles_to_state(t.outputs).to_hex()},
        {"state", t.post_state.to_hex()},
    };
    out << rec.dump() << '\n';
  }
  nlohmann::ordered_json tail = {{"type", "result"},
                                 {"ciphertext", result.ciphertext.to_hex()},
                                 {"sensed_bits", result.sensed_bits},
                                 {"sense_errors", result.sense_errors}};
  out << tail.dump() << '\n';
}

void write_analog_trace(std::ostream& out, const EncryptResult& result) {
  for (const auto& t : result.rounds) {
    for (std::size_t j = 0; j < t.analog.size(); ++j) {
      for (const auto& c : t.analog[j].columns) {
        nlohmann::ordered_json nodes = nlohmann::ordered_json::object();
        for (const auto& n : c.sense.node_span()) nodes[n.name] = n.voltage;
        nlohmann::ordered_json rec = {
            {"round", t.round},      {"slice", j},
            {"column", c.column},    {"xor", c.is_xor},
            {"r_eq", c.r_eq},        {"nodes", nodes},
            {"decision", c.sense.bit ? 1 : 0},
            {"expected", c.expected ? 1 : 0},
        };
        out << rec.dump() << '\n';
      }
    }
  }
}

}  // namespace memgift
