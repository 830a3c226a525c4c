#include "memgift/crossbar.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "memgift/error.h"

namespace memgift {

void DeviceParams::validate() const {
  if (!(r_lrs > 0.0)) throw ConfigError("r_lrs must be positive");
  if (!(r_hrs > r_lrs)) throw ConfigError("r_hrs must exceed r_lrs");
  if (wire_r_per_cell < 0.0 || r_access < 0.0) {
    throw ConfigError("wire and access resistances must be non-negative");
  }
  if (sigma_d2d < 0.0 || sigma_c2c < 0.0) {
    throw ConfigError("variation sigmas must be non-negative");
  }
  if (!(vdd > 0.0)) throw ConfigError("vdd must be positive");
  if (!(v_read > 0.0) || v_read > vdd) {
    throw ConfigError("v_read must lie in (0, vdd]");
  }
}

SaScheme parse_sa_scheme(std::string_view name) {
  if (name == "sxor" || name == "SXOR") return SaScheme::kSxor;
  if (name == "dxor" || name == "DXOR") return SaScheme::kDxor;
  throw ConfigError("unknown SA scheme '" + std::string(name) + "'");
}

const char* to_string(SaScheme scheme) {
  return scheme == SaScheme::kSxor ? "sxor" : "dxor";
}

SenseTopology parse_sense_topology(std::string_view name) {
  if (name == "clamped") return SenseTopology::kClampedBitline;
  if (name == "divider") return SenseTopology::kDivider;
  throw ConfigError("unknown sense topology '" + std::string(name) + "'");
}

const char* to_string(SenseTopology topology) {
  return topology == SenseTopology::kClampedBitline ? "clamped" : "divider";
}

SenseAmpModel SenseAmpParams::xor_amp(SaScheme scheme) const {
  if (scheme == SaScheme::kSxor) return sxor;
  return dxor;
}

SenseAmpModel SenseAmpParams::readout_amp(SaScheme scheme) const {
  if (scheme == SaScheme::kSxor) return ro_s;
  return ro_d;
}

void SenseAmpParams::validate(double vdd) const {
  auto ref = [vdd](double v, const char* name) {
    if (!(v > 0.0 && v < vdd)) {
      throw ConfigError(std::string(name) + " must lie strictly inside (0, vdd)");
    }
  };
  auto load = [](double m, const char* name) {
    if (!(m > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  };
  load(sxor.m1, "sxor_m1");
  load(sxor.m2, "sxor_m2");
  ref(sxor.vth, "sxor_vth");
  load(ro_s.m1, "ro_s_m1");
  ref(ro_s.vth, "ro_s_vth");
  load(dxor.m_and, "dxor_m_and");
  load(dxor.m_nor, "dxor_m_nor");
  ref(dxor.vref_and, "dxor_vref_and");
  ref(dxor.vref_nor, "dxor_vref_nor");
  load(ro_d.m, "ro_d_m");
  ref(ro_d.vref, "ro_d_vref");
}

double node_voltage(double r_eq, double load, const SenseSupply& supply) {
  if (supply.topology == SenseTopology::kDivider) {
    return supply.vdd * load / (load + r_eq);
  }
  return std::min(supply.vdd, supply.v_read * load / r_eq);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

SenseResult sense(double r_eq, const SenseAmpModel& sa,
                  const SenseSupply& supply) {
  if (!(r_eq > 0.0)) {
    throw SimulationError("sense: equivalent resistance must be positive");
  }
  SenseResult r;
  auto node = [&](const char* name, double load, double threshold) {
    SenseNode n{name, node_voltage(r_eq, load, supply), threshold};
    r.nodes[r.node_count++] = n;
    return n;
  };
  std::visit(
      Overloaded{
          [&](const SxorAmp& a) {
            const bool d1 = node("V1", a.m1, a.vth).high();
            const bool d2 = node("V2", a.m2, a.vth).high();
            r.bit = d1 != d2;
          },
          [&](const RoSAmp& a) { r.bit = node("V1", a.m1, a.vth).high(); },
          [&](const DxorAmp& a) {
            const bool x1 = node("X1", a.m_and, a.vref_and).high();
            // The NOR sense fires when the bit line carries almost no
            // current, i.e. when its node stays low.
            const bool x2 = !node("X2", a.m_nor, a.vref_nor).high();
            r.bit = !(x1 || x2);
          },
          [&](const RoDAmp& a) { r.bit = node("V", a.m, a.vref).high(); },
      },
      sa);
  return r;
}

bool meets_level_margin(const SenseNode& node, double vdd) {
  return node.high() ? node.voltage >= 0.6 * vdd : node.voltage <= 0.4 * vdd;
}

// --- Decoders ----------------------------------------------------------------

Decoder::Decoder(int width_in, int width_out)
    : width_in_(width_in), width_out_(width_out) {
  if (width_in < 1 || width_in > 16 || width_out < 1 ||
      width_out > (1 << width_in)) {
    throw ConfigError("decoder dimensions out of range");
  }
}

std::vector<bool> Decoder::decode(unsigned input) const {
  if (input >= static_cast<unsigned>(width_out_)) {
    throw SimulationError("decoder input " + std::to_string(input) +
                          " has no output line (width " +
                          std::to_string(width_out_) + ")");
  }
  std::vector<bool> out(width_out_);
  for (int k = 0; k < width_out_; ++k) {
    bool line = true;
    for (int b = 0; b < width_in_; ++b) {
      const bool literal = (input >> b) & 1u;
      const bool want = (static_cast<unsigned>(k) >> b) & 1u;
      line = line && (literal == want);
    }
    out[k] = line;
  }
  return out;
}

int RowSelection::asserted() const {
  return static_cast<int>(std::count(lines.begin(), lines.end(), true));
}

RowSelection select_rows(std::uint8_t sb_input, int round, int rounds) {
  if (round < 0 || round >= rounds) {
    throw SimulationError("round " + std::to_string(round) +
                          " outside [0, " + std::to_string(rounds) + ")");
  }
  static const Decoder kAddress(4, 16);
  static const Decoder kSelector(6, 40);
  const auto sb_lines = kAddress.decode(sb_input & 0xF);
  const auto key_lines = kSelector.decode(static_cast<unsigned>(round));

  RowSelection sel;
  sel.lines.assign(16 + rounds, false);
  for (int k = 0; k < 16; ++k) {
    if (sb_lines[k]) {
      sel.lines[k] = true;
      sel.sb_row = k;
    }
  }
  for (int r = 0; r < rounds; ++r) {
    if (key_lines[r]) {
      sel.lines[16 + r] = true;
      sel.key_row = r;
    }
  }
  return sel;
}

// --- SliceArray --------------------------------------------------------------

namespace {

std::mt19937_64 stream(std::uint64_t seed, int slice, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(slice), tag};
  return std::mt19937_64(seq);
}

}  // namespace

SliceArray::SliceArray(int index, const CipherVariant& variant, bool has_rc,
                       std::uint64_t seed)
    : index_(index),
      variant_(variant),
      has_rc_(has_rc),
      key_(static_cast<std::size_t>(variant.rounds)),
      d2d_(stream(seed, index, 0xD2D)),
      c2c_(stream(seed, index, 0xC2C)) {}

int SliceArray::key_column_for_bit(int bit) const {
  const auto bits = key_column_bits(variant_);
  for (int k = 0; k < key_columns(); ++k) {
    if (bits[k] == bit) return k;
  }
  return -1;
}

std::vector<std::uint8_t> SliceArray::logic_snapshot() const {
  std::vector<std::uint8_t> out;
  out.reserve(16 * 4 + key_.size() * 3);
  for (const auto& row : sb_) {
    for (const auto& c : row) out.push_back(static_cast<std::uint8_t>(c.state));
  }
  for (const auto& row : key_) {
    for (int k = 0; k < key_columns(); ++k) {
      out.push_back(static_cast<std::uint8_t>(row[k].state));
    }
  }
  return out;
}

void SliceArray::program_cell(MemristorCell& cell, bool bit,
                              const DeviceParams& params) {
  cell.state = bit ? LogicState::kLrs : LogicState::kHrs;
  const double nominal = bit ? params.r_lrs : params.r_hrs;
  cell.resistance =
      nominal * variation_multiplier(params.sigma_d2d, gauss_d2d_(d2d_));
  ++writes_;
}

void SliceArray::program_sbox(const SBoxTable& sbox,
                              const DeviceParams& params) {
  for (int row = 0; row < 16; ++row) {
    const auto value = sbox[static_cast<std::uint8_t>(row)];
    for (int col = 0; col < 4; ++col) {
      program_cell(sb_[row][col], (value >> col) & 1u, params);
    }
  }
}

void SliceArray::program_key_rows(const SliceKeyMatrix& rows,
                                  const DeviceParams& params) {
  if (static_cast<int>(rows.rows.size()) != variant_.rounds ||
      rows.has_rc != has_rc_ || rows.slice != index_) {
    throw SimulationError("key matrix for slice " + std::to_string(rows.slice) +
                          " does not fit slice " + std::to_string(index_));
  }
  for (int r = 0; r < variant_.rounds; ++r) {
    for (int k = 0; k < key_columns(); ++k) {
      program_cell(key_[r][k], (rows.rows[r] >> k) & 1u, params);
    }
  }
}

SliceArray program_slice(const SBoxTable& sbox, const SliceKeyMatrix& rows,
                         const CipherVariant& variant,
                         const DeviceParams& params) {
  if (rows.slice < 0 || rows.slice >= variant.nibbles()) {
    throw SimulationError("slice index " + std::to_string(rows.slice) +
                          " out of range for " + variant.name());
  }
  params.validate();
  SliceArray slice(rows.slice, variant, rows.has_rc, params.seed);
  slice.program_sbox(sbox, params);
  slice.program_key_rows(rows, params);
  return slice;
}

double variation_multiplier(double sigma, double z) {
  return std::max(0.01, 1.0 + sigma * std::clamp(z, -4.0, 4.0));
}

double bitline_equivalent_resistance(std::span<const double> branches) {
  if (branches.empty()) {
    throw SimulationError("sensed bit line has no selected cell");
  }
  double conductance = 0.0;
  for (double r : branches) {
    if (!(r > 0.0)) throw SimulationError("branch resistance must be positive");
    conductance += 1.0 / r;
  }
  return 1.0 / conductance;
}

RoundReadout read_round(SliceArray& slice, std::uint8_t input, int round,
                        SaScheme scheme, const SenseAmpParams& sa,
                        const DeviceParams& params) {
  const CipherVariant& v = slice.variant();
  const RowSelection sel = select_rows(input, round, v.rounds);
  const int total_rows = 16 + v.rounds;
  const SenseSupply supply{params.vdd, params.v_read, sa.topology};
  const SenseAmpModel xor_sa = sa.xor_amp(scheme);
  const SenseAmpModel ro_sa = sa.readout_amp(scheme);

  auto branch = [&](const MemristorCell& cell, int wl) {
    // Draw unconditionally so the stream position never depends on sigma.
    const double z = slice.draw_c2c();
    return cell.resistance * variation_multiplier(params.sigma_c2c, z) +
           params.r_access + params.wire_r_per_cell * (total_rows - wl);
  };

  RoundReadout out;
  for (int col = 0; col < 4; ++col) {
    ColumnReading& reading = out.columns[col];
    reading.column = col;
    std::array<double, 2> branches{};
    std::size_t n = 0;

    const MemristorCell& sb = slice.sb_cell(sel.sb_row, col);
    branches[n++] = branch(sb, sel.sb_row);
    reading.expected = sb.bit();

    const int key_col = slice.key_column_for_bit(col);
    if (key_col >= 0) {
      const MemristorCell& key = slice.key_cell(sel.key_row, key_col);
      branches[n++] = branch(key, 16 + sel.key_row);
      reading.expected = reading.expected != key.bit();
      reading.is_xor = true;
    }

    reading.r_eq = bitline_equivalent_resistance({branches.data(), n});
    reading.sense = sense(reading.r_eq, reading.is_xor ? xor_sa : ro_sa, supply);
    out.output |= static_cast<std::uint8_t>(reading.sense.bit << col);
    out.expected |= static_cast<std::uint8_t>(reading.expected << col);
  }
  return out;
}

}  // namespace memgift
