#include "memgift/events.h"

#include "memgift/error.h"

namespace memgift {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kReadCycle: return "read_cycle";
    case EventKind::kSxorSense: return "sxor_sense";
    case EventKind::kRoSSense: return "ro_s_sense";
    case EventKind::kDxorSense: return "dxor_sense";
    case EventKind::kRoDSense: return "ro_d_sense";
    case EventKind::kDecoderCycle: return "decoder_cycle";
    case EventKind::kSelectorCycle: return "selector_cycle";
    case EventKind::kRegisterCycle: return "register_cycle";
    case EventKind::kCellRead: return "cell_read";
    case EventKind::kCellWrite: return "cell_write";
  }
  return "?";
}

EventLog EventLog::Zeroed(SaScheme scheme) {
  EventLog log;
  log.scheme = scheme;
  for (auto k : kAllEventKinds) log.counts[k] = 0;
  return log;
}

std::uint64_t EventLog::count(EventKind kind) const {
  const auto it = counts.find(kind);
  return it == counts.end() ? 0 : it->second;
}

bool EventLog::complete() const {
  for (auto k : kAllEventKinds) {
    if (!counts.contains(k)) return false;
  }
  return true;
}

EventLog EventLog::operator+(const EventLog& other) const {
  if (other.scheme != scheme) {
    throw SimulationError("cannot merge event logs of different SA schemes");
  }
  EventLog out = *this;
  for (const auto& [k, n] : other.counts) out.counts[k] += n;
  return out;
}

EventLog EventLog::since(const EventLog& earlier) const {
  EventLog out = *this;
  for (const auto& [k, n] : earlier.counts) {
    if (out.counts[k] < n) {
      throw SimulationError("event log is not a continuation of the baseline");
    }
    out.counts[k] -= n;
  }
  return out;
}

}  // namespace memgift
