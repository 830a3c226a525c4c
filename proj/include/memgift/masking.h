#ifndef MEMGIFT_MASKING_H_
#define MEMGIFT_MASKING_H_

// Run-time S-box reconfiguration for Boolean masking.
//
// A single nibble mask m is applied to every slice. The slices hold
// S'(x) = S(x ^ m) ^ m, the plaintext enters as pt ^ (m||m||...||m) and the
// final register is unmasked with the same pattern. The round-key XOR is
// linear and the wiring keeps every bit in its plane, so the uniform mask
// survives each round unchanged.

#include <cstdint>

#include "memgift/gift.h"
#include "memgift/pipeline.h"

namespace memgift {

struct MaskPair {
  std::uint8_t m = 0;  // only the low four bits are used
};

SBoxTable remask_sbox(const SBoxTable& sbox, MaskPair mask);

// The mask replicated into every nibble of a `width`-bit block.
CipherState mask_pattern(MaskPair mask, int width);

// Reprograms every slice's S-box region with the table masked by `mask`
// (16x4 cell writes per slice).
void apply_mask(EncryptionSession& session, MaskPair mask);

// Throws SimulationError if the session is not programmed with `mask`.
EncryptResult encrypt_masked(EncryptionSession& session,
                             const CipherState& plaintext, MaskPair mask,
                             TraceLevel level = TraceLevel::kNone);

}  // namespace memgift

#endif  // MEMGIFT_MASKING_H_
