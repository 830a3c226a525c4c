#ifndef MEMGIFT_CROSSBAR_H_
#define MEMGIFT_CROSSBAR_H_

// Behavioral model of one 1T1R slice: a 16x4 S-box LUT region stacked on a
// rounds x {2,3} key region, the word-line decoders that select one row in
// each region, and the sense amplifiers at the bottom of every bit line.
//
// Resistances are in ohms, voltages in volts.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "memgift/gift.h"
#include "memgift/layout.h"

namespace memgift {

enum class LogicState : std::uint8_t { kHrs = 0, kLrs = 1 };

struct DeviceParams {
  double r_lrs = 2e3;
  double r_hrs = 1e6;
  // Bit-line wire resistance per cell pitch between a cell and its SA.
  double wire_r_per_cell = 0.0;
  // On-resistance of the access transistor.
  double r_access = 0.0;
  double sigma_d2d = 0.0;
  double sigma_c2c = 0.0;
  double vdd = 0.9;
  // Read pulse amplitude on the selection line.
  double v_read = 0.3;
  std::uint64_t seed = 1;

  // Throws ConfigError on non-physical values.
  void validate() const;
};

struct MemristorCell {
  LogicState state = LogicState::kHrs;
  double resistance = 0.0;  // programmed value, D2D draw included

  bool bit() const { return state == LogicState::kLrs; }
};

// How the bit-line current becomes a node voltage.
enum class SenseTopology {
  // Bit line clamped near ground; its current is mirrored into the reference
  // element M: V = min(vdd, v_read * M / R_eq).
  kClampedBitline,
  // Plain divider against M: V = vdd * M / (M + R_eq).
  kDivider,
};

enum class SaScheme { kSxor, kDxor };

SaScheme parse_sa_scheme(std::string_view name);
const char* to_string(SaScheme scheme);
SenseTopology parse_sense_topology(std::string_view name);
const char* to_string(SenseTopology topology);

// Scouting-logic voltage SA: two reference memristors, XOR of the two
// threshold decisions.
struct SxorAmp {
  double m1 = 2e3;
  double m2 = 250e3;
  double vth = 0.45;
};

// Scouting-logic read-out SA: a single reference memristor.
struct RoSAmp {
  double m1 = 550e3;
  double vth = 0.45;
};

// Dual-SA XOR: Y = NOR(AND-sense, NOR-sense).
struct DxorAmp {
  double m_and = 2e3;
  double m_nor = 250e3;
  double vref_and = 0.45;
  double vref_nor = 0.43;
};

struct RoDAmp {
  double m = 550e3;
  double vref = 0.43;
};

using SenseAmpModel = std::variant<SxorAmp, RoSAmp, DxorAmp, RoDAmp>;

struct SenseAmpParams {
  SenseTopology topology = SenseTopology::kClampedBitline;
  SxorAmp sxor;
  RoSAmp ro_s;
  DxorAmp dxor;
  RoDAmp ro_d;

  SenseAmpModel xor_amp(SaScheme scheme) const;
  SenseAmpModel readout_amp(SaScheme scheme) const;
  // Every reference strictly between 0 and vdd, every load positive.
  void validate(double vdd) const;
};

struct SenseSupply {
  double vdd = 0.9;
  double v_read = 0.3;
  SenseTopology topology = SenseTopology::kClampedBitline;
};

struct SenseNode {
  const char* name = "";
  double voltage = 0.0;
  double threshold = 0.0;

  bool high() const { return voltage > threshold; }
};

struct SenseResult {
  bool bit = false;
  std::array<SenseNode, 2> nodes{};
  int node_count = 0;

  std::span<const SenseNode> node_span() const {
    return {nodes.data(), static_cast<std::size_t>(node_count)};
  }
};

double node_voltage(double r_eq, double load, const SenseSupply& supply);

// Throws SimulationError if r_eq is not positive.
SenseResult sense(double r_eq, const SenseAmpModel& sa,
                  const SenseSupply& supply);

// A node voltage is a clean logic level if it sits at or above 0.6 vdd
// (high) or at or below 0.4 vdd (low).
bool meets_level_margin(const SenseNode& node, double vdd);

// One-hot decoder abstracted from a NAND/NOR tree: output k is the AND of
// the input literals matching k's bit pattern.
class Decoder {
 public:
  Decoder(int width_in, int width_out);

  int width_in() const { return width_in_; }
  int width_out() const { return width_out_; }

  // Throws SimulationError when input >= width_out.
  std::vector<bool> decode(unsigned input) const;

 private:
  int width_in_;
  int width_out_;
};

// Shared round selector: a 6-bit counter driving a 6-to-40 decoder.
class RoundSelector {
 public:
  void reset() { counter_ = 0; }
  void advance() { counter_ = (counter_ + 1) & 0x3F; }
  int count() const { return counter_; }
  std::vector<bool> lines() const { return decoder_.decode(counter_); }

 private:
  Decoder decoder_{6, 40};
  unsigned counter_ = 0;
};

// Word lines WL0..WL(15+rounds). WL0..15 address the S-box region, WL16+r
// the key row of round r.
struct RowSelection {
  int sb_row = 0;
  int key_row = 0;
  std::vector<bool> lines;

  int asserted() const;
};

// Throws SimulationError if round is outside [0, rounds).
RowSelection select_rows(std::uint8_t sb_input, int round, int rounds);

class SliceArray {
 public:
  // Variation streams are derived from (seed, index).
  SliceArray(int index, const CipherVariant& variant, bool has_rc,
             std::uint64_t seed);

  int index() const { return index_; }
  const CipherVariant& variant() const { return variant_; }
  bool has_rc() const { return has_rc_; }
  int key_columns() const { return has_rc_ ? 3 : 2; }

  const MemristorCell& sb_cell(int row, int col) const { return sb_[row][col]; }
  const MemristorCell& key_cell(int round, int col) const {
    return key_[round][col];
  }

  // Column of the key region feeding nibble bit `bit`, or -1.
  int key_column_for_bit(int bit) const;

  std::uint64_t writes() const { return writes_; }

  // Logic states of every cell in row-major order (S-box region first).
  std::vector<std::uint8_t> logic_snapshot() const;

  void program_sbox(const SBoxTable& sbox, const DeviceParams& params);
  void program_key_rows(const SliceKeyMatrix& rows, const DeviceParams& params);

  // Next standard-normal draw of the read-time (C2C) variation stream.
  double draw_c2c() { return gauss_c2c_(c2c_); }

 private:
  void program_cell(MemristorCell& cell, bool bit, const DeviceParams& params);

  int index_;
  CipherVariant variant_;
  bool has_rc_;
  std::array<std::array<MemristorCell, 4>, 16> sb_{};
  std::vector<std::array<MemristorCell, 3>> key_;
  std::uint64_t writes_ = 0;
  std::mt19937_64 d2d_;
  std::mt19937_64 c2c_;
  std::normal_distribution<double> gauss_d2d_{0.0, 1.0};
  std::normal_distribution<double> gauss_c2c_{0.0, 1.0};
};

// Programs one slice from its layout rows. Throws SimulationError when the
// matrix does not fit the variant.
SliceArray program_slice(const SBoxTable& sbox, const SliceKeyMatrix& rows,
                         const CipherVariant& variant,
                         const DeviceParams& params);

// Multiplier 1 + sigma * z with z clamped to [-4, 4], floored at 1%.
double variation_multiplier(double sigma, double z);

// Parallel combination of the selected branches (each branch already
// includes its cell, access transistor and wire segment).
double bitline_equivalent_resistance(std::span<const double> branches);

struct ColumnReading {
  int column = 0;
  bool is_xor = false;
  double r_eq = 0.0;
  SenseResult sense;
  bool expected = false;  // Boolean value of the stored operands
};

struct RoundReadout {
  std::uint8_t output = 0;
  std::uint8_t expected = 0;
  std::array<ColumnReading, 4> columns{};
};

// One read cycle of a slice: select the S-box row for `input` and the key
// row for `round`, sense all four bit lines. Cell states are not modified.
RoundReadout read_round(SliceArray& slice, std::uint8_t input, int round,
                        SaScheme scheme, const SenseAmpParams& sa,
                        const DeviceParams& params);

}  // namespace memgift

#endif  // MEMGIFT_CROSSBAR_H_
