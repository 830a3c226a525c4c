#ifndef MEMGIFT_EVENTS_H_
#define MEMGIFT_EVENTS_H_

#include <array>
#include <cstdint>
#include <map>
#include <string_view>

#include "memgift/crossbar.h"

namespace memgift {

enum class EventKind {
  kReadCycle,
  kSxorSense,
  kRoSSense,
  kDxorSense,
  kRoDSense,
  kDecoderCycle,   // one 4-to-16 address decoder firing
  kSelectorCycle,  // counter tick + 6-to-40 decode
  kRegisterCycle,  // output register clocked once
  kCellRead,       // one selected cell conducting during a read
  kCellWrite,
};

inline constexpr std::array<EventKind, 10> kAllEventKinds = {
    EventKind::kReadCycle,     EventKind::kSxorSense,    EventKind::kRoSSense,
    EventKind::kDxorSense,     EventKind::kRoDSense,     EventKind::kDecoderCycle,
    EventKind::kSelectorCycle, EventKind::kRegisterCycle, EventKind::kCellRead,
    EventKind::kCellWrite};

const char* to_string(EventKind kind);

// Hardware event counts of a session. A complete log carries every
// category, even at zero; the energy model rejects incomplete logs.
struct EventLog {
  SaScheme scheme = SaScheme::kDxor;
  std::map<EventKind, std::uint64_t> counts;

  static EventLog Zeroed(SaScheme scheme);

  void add(EventKind kind, std::uint64_t n = 1) { counts[kind] += n; }
  std::uint64_t count(EventKind kind) const;
  bool complete() const;

  EventLog operator+(const EventLog& other) const;
  // Per-category difference; `earlier` must be a prefix of this log.
  EventLog since(const EventLog& earlier) const;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

}  // namespace memgift

#endif  // MEMGIFT_EVENTS_H_
