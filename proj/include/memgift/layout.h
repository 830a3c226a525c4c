#ifndef MEMGIFT_LAYOUT_H_
#define MEMGIFT_LAYOUT_H_

// Offline layout compiler: turns a key into the per-slice crossbar contents
// (S-box LUT rows plus one pre-scheduled round-key/round-constant row per
// round) and the inter-round feedback wiring.

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "memgift/error.h"
#include "memgift/gift.h"

namespace memgift {

enum class FeedbackMode {
  kPermuted,  // output bit (j,b) is wired to next-round input P(4j+b)
  kLocal,     // output nibble j feeds back to slice j unchanged (diagnostic)
};

FeedbackMode parse_feedback_mode(std::string_view name);
const char* to_string(FeedbackMode mode);

struct PermWiring {
  std::vector<int> map;  // map[i] = destination of output bit i

  static PermWiring Permuted(const CipherVariant& v);
  static PermWiring Local(const CipherVariant& v);

  int operator()(int i) const { return map[i]; }
  bool is_permutation() const;
  bool is_plane_preserving() const;

  friend bool operator==(const PermWiring&, const PermWiring&) = default;
};

// Nibble bit that each key-region column feeds: columns 0 and 1 hold the
// round-key bits, column 2 (RC slices only) holds the round-constant bit.
std::array<int, 3> key_column_bits(const CipherVariant& v);

struct SliceKeyMatrix {
  int slice = 0;
  bool has_rc = false;
  // One entry per round (word lines WL16 onward); bit k = key column k.
  std::vector<std::uint8_t> rows;

  int columns() const { return has_rc ? 3 : 2; }

  friend bool operator==(const SliceKeyMatrix&,
                         const SliceKeyMatrix&) = default;
};

struct LayoutBundle {
  CipherVariant variant = CipherVariant::Gift128();
  SBoxTable sbox = SBoxTable::Gift();
  std::vector<SliceKeyMatrix> slices;
  PermWiring wiring;
  std::vector<int> rc_slices;

  // Key-region row `round` of slice j expressed as an XOR mask over the
  // slice's nibble.
  std::uint8_t nibble_mask(int slice, int round) const;

  friend bool operator==(const LayoutBundle&, const LayoutBundle&) = default;
};

std::vector<int> rc_slice_set(const CipherVariant& v);

LayoutBundle compile_layout(const KeyState& key, const CipherVariant& v);

// Plain digital evaluation of a layout: per round out[j] = S(in[j]) xor
// row[j][r], then route through the wiring selected by `mode`.
CipherState evaluate_layout(const LayoutBundle& layout, const CipherState& pt,
                            FeedbackMode mode = FeedbackMode::kPermuted);

class LayoutError : public Error {
 public:
  enum class Kind { kMalformed, kVersion, kChecksum, kTruncated };

  LayoutError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Text layout file:
//   MEMGIFT-LAYOUT v1 <variant>
//   wiring <P(0)> <P(1)> ...
//   rc-slices <j> ...
//   slice <j> sb <16 hex rows, WL0 first>
//   slice <j> rk<2|3> <one hex digit per round row, WL16 first>
//   checksum <crc32 of every preceding byte, 8 hex digits>
// Within a row digit, bit k is column k.
void export_layout(const LayoutBundle& layout, std::ostream& out);
LayoutBundle import_layout(std::istream& in);

}  // namespace memgift

#endif  // MEMGIFT_LAYOUT_H_
