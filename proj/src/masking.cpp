#include "memgift/masking.h"

#include <string>

#include "memgift/error.h"

namespace memgift {

SBoxTable remask_sbox(const SBoxTable& sbox, MaskPair mask) {
  const std::uint8_t m = mask.m & 0xF;
  std::array<std::uint8_t, 16> out{};
  for (std::uint8_t x = 0; x < 16; ++x) {
    out[x] = static_cast<std::uint8_t>(sbox[x ^ m] ^ m);
  }
  return SBoxTable(out);
}

CipherState mask_pattern(MaskPair mask, int width) {
  CipherState s(width);
  for (int j = 0; j < s.nibbles(); ++j) s.set_nibble(j, mask.m & 0xF);
  return s;
}

void apply_mask(EncryptionSession& session, MaskPair mask) {
  session.reprogram_sbox(remask_sbox(SBoxTable::Gift(), mask), mask.m & 0xF);
}

EncryptResult encrypt_masked(EncryptionSession& session,
                             const CipherState& plaintext, MaskPair mask,
                             TraceLevel level) {
  if (session.sbox_mask() != (mask.m & 0xF)) {
    throw SimulationError("session S-boxes carry mask " +
                          std::to_string(session.sbox_mask()) +
                          ", not the supplied mask " +
                          std::to_string(mask.m & 0xF));
  }
  const CipherState pattern = mask_pattern(mask, plaintext.width());
  EncryptResult r = session.encrypt(plaintext ^ pattern, level);
  r.ciphertext = r.ciphertext ^ pattern;
  return r;
}

}  // namespace memgift
