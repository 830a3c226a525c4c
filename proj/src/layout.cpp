#include "memgift/layout.h"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "memgift/hex.h"

namespace memgift {

FeedbackMode parse_feedback_mode(std::string_view name) {
  if (name == "permuted") return FeedbackMode::kPermuted;
  if (name == "local") return FeedbackMode::kLocal;
  throw ConfigError("unknown feedback mode '" + std::string(name) + "'");
}

const char* to_string(FeedbackMode mode) {
  return mode == FeedbackMode::kPermuted ? "permuted" : "local";
}

PermWiring PermWiring::Permuted(const CipherVariant& v) {
  PermWiring w;
  w.map.resize(v.block_bits);
  for (int i = 0; i < v.block_bits; ++i) w.map[i] = bit_permutation(v, i);
  return w;
}

PermWiring PermWiring::Local(const CipherVariant& v) {
  PermWiring w;
  w.map.resize(v.block_bits);
  for (int i = 0; i < v.block_bits; ++i) w.map[i] = i;
  return w;
}

bool PermWiring::is_permutation() const {
  std::vector<bool> hit(map.size(), false);
  for (int d : map) {
    if (d < 0 || d >= static_cast<int>(map.size()) || hit[d]) return false;
    hit[d] = true;
  }
  return true;
}

bool PermWiring::is_plane_preserving() const {
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] % 4 != static_cast<int>(i % 4)) return false;
  }
  return true;
}

std::array<int, 3> key_column_bits(const CipherVariant& v) {
  return {v.key_bit_lo, v.key_bit_hi, 3};
}

std::uint8_t LayoutBundle::nibble_mask(int slice, int round) const {
  const SliceKeyMatrix& m = slices[slice];
  const auto bits = key_column_bits(variant);
  std::uint8_t mask = 0;
  for (int k = 0; k < m.columns(); ++k) {
    if ((m.rows[round] >> k) & 1u) mask |= static_cast<std::uint8_t>(1u << bits[k]);
  }
  return mask;
}

std::vector<int> rc_slice_set(const CipherVariant& v) {
  const auto targets = round_constant_positions(v);
  std::vector<int> out;
  for (int j = 0; j < v.nibbles(); ++j) {
    const int dest = bit_permutation(v, 4 * j + 3);
    if (std::find(targets.begin(), targets.end(), dest) != targets.end()) {
      out.push_back(j);
    }
  }
  return out;
}

LayoutBundle compile_layout(const KeyState& key, const CipherVariant& v) {
  LayoutBundle b;
  b.variant = v;
  b.wiring = PermWiring::Permuted(v);
  b.rc_slices = rc_slice_set(v);

  // Key schedule runs here and nowhere else.
  const auto rks = round_keys(key, v);
  const auto rcs = round_constants(v.rounds);
  const auto col_bits = key_column_bits(v);

  // Bit XORed at global position p in round r.
  auto key_bit = [&](int p, int r) -> std::uint8_t {
    const int nib = p / 4;
    if (p % 4 == v.key_bit_lo) return (rks[r].v >> nib) & 1u;
    if (p % 4 == v.key_bit_hi) return (rks[r].u >> nib) & 1u;
    if (p == v.block_bits - 1) return 1;
    for (int k = 0; k < 6; ++k) {
      if (kRoundConstantPositions[k] == p) return (rcs[r].value >> k) & 1u;
    }
    return 0;
  };

  for (int j = 0; j < v.nibbles(); ++j) {
    SliceKeyMatrix m;
    m.slice = j;
    m.has_rc = std::find(b.rc_slices.begin(), b.rc_slices.end(), j) !=
               b.rc_slices.end();
    m.rows.assign(v.rounds, 0);
    for (int k = 0; k < m.columns(); ++k) {
      // The crossbar XOR happens before the feedback wiring, so the key bit
      // lands at the pre-permutation coordinate of its target position.
      const int dest = b.wiring(4 * j + col_bits[k]);
      for (int r = 0; r < v.rounds; ++r) {
        m.rows[r] |= static_cast<std::uint8_t>(key_bit(dest, r) << k);
      }
    }
    b.slices.push_back(std::move(m));
  }
  return b;
}

CipherState evaluate_layout(const LayoutBundle& layout, const CipherState& pt,
                            FeedbackMode mode) {
  const CipherVariant& v = layout.variant;
  if (pt.width() != v.block_bits) throw InputError("block width mismatch");
  const PermWiring local = PermWiring::Local(v);
  const PermWiring& wiring =
      mode == FeedbackMode::kPermuted ? layout.wiring : local;
  CipherState state = pt;
  for (int r = 0; r < v.rounds; ++r) {
    CipherState next(v.block_bits);
    for (int j = 0; j < v.nibbles(); ++j) {
      const std::uint8_t out =
          layout.sbox[state.nibble(j)] ^ layout.nibble_mask(j, r);
      for (int b = 0; b < 4; ++b) next.set_bit(wiring(4 * j + b), (out >> b) & 1u);
    }
    state = next;
  }
  return state;
}

// --- File format -----------------------------------------------------------

namespace {

constexpr const char* kMagic = "MEMGIFT-LAYOUT";
constexpr const char* kVersion = "v1";

std::uint32_t crc_of(const std::string& bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
            static_cast<uInt>(bytes.size())));
}

[[noreturn]] void fail(LayoutError::Kind kind, const std::string& what) {
  throw LayoutError(kind, "layout file: " + what);
}

std::vector<std::uint8_t> parse_rows(const std::string& hex, std::size_t count,
                                     int columns) {
  if (hex.size() != count) {
    fail(LayoutError::Kind::kMalformed,
         "expected " + std::to_string(count) + " rows, got " +
             std::to_string(hex.size()));
  }
  std::vector<std::uint8_t> rows;
  for (char c : hex) {
    std::uint8_t d;
    try {
      d = hex_digit_value(c);
    } catch (const InputError&) {
      fail(LayoutError::Kind::kMalformed, std::string("bad hex digit '") + c + "'");
    }
    if (d >> columns) {
      fail(LayoutError::Kind::kMalformed, "row value exceeds column count");
    }
    rows.push_back(d);
  }
  return rows;
}

}  // namespace

void export_layout(const LayoutBundle& layout, std::ostream& out) {
  std::ostringstream body;
  body << kMagic << ' ' << kVersion << ' ' << layout.variant.name() << '\n';
  body << "wiring";
  for (int d : layout.wiring.map) body << ' ' << d;
  body << "\nrc-slices";
  for (int j : layout.rc_slices) body << ' ' << j;
  body << '\n';
  std::string sb;
  for (auto e : layout.sbox.entries()) sb.push_back(hex_digit(e));
  for (const auto& m : layout.slices) {
    body << "slice " << m.slice << " sb " << sb << '\n';
    body << "slice " << m.slice << " rk" << m.columns() << ' ';
    for (auto row : m.rows) body << hex_digit(row);
    body << '\n';
  }
  const std::string text = body.str();
  char crc[16];
  std::snprintf(crc, sizeof crc, "%08x", crc_of(text));
  out << text << "checksum " << crc << '\n';
}

LayoutBundle import_layout(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  if (text.empty()) fail(LayoutError::Kind::kTruncated, "empty file");

  // Header first, so a foreign or newer file is reported as such rather than
  // as a checksum failure.
  std::istringstream head(text.substr(0, text.find('\n')));
  std::string magic, version, variant_name;
  head >> magic >> version >> variant_name;
  if (magic != kMagic) fail(LayoutError::Kind::kMalformed, "bad magic");
  if (version != kVersion) {
    fail(LayoutError::Kind::kVersion,
         "unsupported version '" + version + "' (expected " + kVersion + ")");
  }
  CipherVariant v;
  try {
    v = parse_variant(variant_name);
  } catch (const ConfigError& e) {
    fail(LayoutError::Kind::kMalformed, e.what());
  }

  const auto pos = text.rfind("checksum ");
  if (pos == std::string::npos || (pos != 0 && text[pos - 1] != '\n')) {
    fail(LayoutError::Kind::kTruncated, "missing checksum line");
  }
  std::string crc_hex = text.substr(pos + 9);
  while (!crc_hex.empty() && (crc_hex.back() == '\n' || crc_hex.back() == '\r')) {
    crc_hex.pop_back();
  }
  if (crc_hex.size() != 8) fail(LayoutError::Kind::kTruncated, "short checksum");
  std::uint32_t stored = 0;
  for (char c : crc_hex) {
    try {
      stored = (stored << 4) | hex_digit_value(c);
    } catch (const InputError&) {
      fail(LayoutError::Kind::kMalformed, "bad checksum digits");
    }
  }
  const std::string body = text.substr(0, pos);
  if (crc_of(body) != stored) {
    fail(LayoutError::Kind::kChecksum, "checksum mismatch");
  }

  LayoutBundle b;
  b.variant = v;
  b.slices.resize(v.nibbles());
  std::vector<bool> have_sb(v.nibbles(), false), have_rk(v.nibbles(), false);
  bool have_wiring = false, have_rc = false;
  std::optional<SBoxTable> sbox;

  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "wiring") {
      int d;
      while (ls >> d) b.wiring.map.push_back(d);
      have_wiring = true;
    } else if (tag == "rc-slices") {
      int j;
      while (ls >> j) b.rc_slices.push_back(j);
      have_rc = true;
    } else if (tag == "slice") {
      int j = -1;
      std::string region, hex;
      ls >> j >> region >> hex;
      if (j < 0 || j >= v.nibbles()) {
        fail(LayoutError::Kind::kMalformed, "slice index out of range");
      }
      if (region == "sb") {
        const auto rows = parse_rows(hex, 16, 4);
        std::array<std::uint8_t, 16> entries{};
        std::copy(rows.begin(), rows.end(), entries.begin());
        SBoxTable t = [&] {
          try {
            return SBoxTable(entries);
          } catch (const InputError& e) {
            fail(LayoutError::Kind::kMalformed, e.what());
          }
        }();
        if (sbox && !(*sbox == t)) {
          fail(LayoutError::Kind::kMalformed, "slices disagree on S-box rows");
        }
        sbox = t;
        have_sb[j] = true;
      } else if (region == "rk2" || region == "rk3") {
        SliceKeyMatrix& m = b.slices[j];
        m.slice = j;
        m.has_rc = region == "rk3";
        m.rows = parse_rows(hex, v.rounds, m.columns());
        have_rk[j] = true;
      } else {
        fail(LayoutError::Kind::kMalformed, "unknown region '" + region + "'");
      }
    } else {
      fail(LayoutError::Kind::kMalformed, "unknown line '" + tag + "'");
    }
  }

  const bool complete =
      have_wiring && have_rc && sbox &&
      std::all_of(have_sb.begin(), have_sb.end(), [](bool x) { return x; }) &&
      std::all_of(have_rk.begin(), have_rk.end(), [](bool x) { return x; });
  if (!complete) fail(LayoutError::Kind::kTruncated, "missing layout lines");
  b.sbox = *sbox;

  if (static_cast<int>(b.wiring.map.size()) != v.block_bits ||
      !b.wiring.is_permutation() || !b.wiring.is_plane_preserving()) {
    fail(LayoutError::Kind::kMalformed,
         "wiring is not a plane-preserving permutation");
  }
  const std::set<int> rc(b.rc_slices.begin(), b.rc_slices.end());
  for (const auto& m : b.slices) {
    if (m.has_rc != (rc.count(m.slice) == 1)) {
      fail(LayoutError::Kind::kMalformed,
           "round-constant column does not match rc-slices");
    }
  }
  return b;
}

}  // namespace memgift
