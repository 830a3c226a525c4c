#include "memgift/energy.h"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "memgift/error.h"

namespace memgift {

const char* to_string(Component c) {
  switch (c) {
    case Component::kDecoders: return "decoders";
    case Component::kSenseAmps: return "sense_amps";
    case Component::kCrossbar: return "crossbar";
    case Component::kRegister: return "register";
    case Component::kSelector: return "selector";
  }
  return "?";
}

void EnergyParams::validate() const {
  const double values[] = {
      sxor_sense,      dxor_sense,      ro_s_sense,
      ro_d_sense,      decoder_cycle,   selector_cycle,
      register_cycle,  cell_read,       cell_write,
      static_decoders, static_sxor_sa,  static_dxor_sa,
      static_crossbar, static_register, static_selector,
      area_decoder_per_slice, area_sxor_sa_per_slice, area_dxor_sa_per_slice,
      area_crossbar_per_slice, area_register_per_bit, area_selector};
  for (double v : values) {
    if (!(v >= 0.0)) throw ConfigError("energy parameters must be non-negative");
  }
  if (!(clock_hz > 0.0)) throw ConfigError("clock_hz must be positive");
}

AreaReport area_report(const CipherVariant& variant, SaScheme scheme,
                       const EnergyParams& params) {
  const double slices = variant.nibbles();
  const double sa_per_slice = scheme == SaScheme::kSxor
                                  ? params.area_sxor_sa_per_slice
                                  : params.area_dxor_sa_per_slice;
  AreaReport a;
  a.breakdown_mm2[Component::kDecoders] = params.area_decoder_per_slice * slices;
  a.breakdown_mm2[Component::kSenseAmps] = sa_per_slice * slices;
  a.breakdown_mm2[Component::kCrossbar] = params.area_crossbar_per_slice * slices;
  a.breakdown_mm2[Component::kRegister] =
      params.area_register_per_bit * variant.block_bits;
  a.breakdown_mm2[Component::kSelector] = params.area_selector;
  for (const auto& [c, v] : a.breakdown_mm2) a.total_mm2 += v;
  return a;
}

EnergyReport account(const EventLog& log, const EnergyParams& params,
                     const CipherVariant& variant) {
  params.validate();
  if (!log.complete()) {
    std::string missing;
    for (auto k : kAllEventKinds) {
      if (!log.counts.contains(k)) missing += std::string(" ") + to_string(k);
    }
    throw SimulationError("event log is missing categories:" + missing);
  }
  const auto n = [&](EventKind k) { return static_cast<double>(log.count(k)); };
  if (n(EventKind::kReadCycle) == 0) {
    throw SimulationError("event log contains no read cycle");
  }

  EnergyReport r;
  r.scheme = log.scheme;
  r.rounds = static_cast<int>(log.count(EventKind::kReadCycle));
  r.latency_s = n(EventKind::kReadCycle) / params.clock_hz;

  const double sa_static = log.scheme == SaScheme::kSxor ? params.static_sxor_sa
                                                         : params.static_dxor_sa;
  auto& b = r.breakdown_j;
  b[Component::kDecoders] = params.decoder_cycle * n(EventKind::kDecoderCycle) +
                            params.static_decoders * r.latency_s;
  b[Component::kSenseAmps] = params.sxor_sense * n(EventKind::kSxorSense) +
                             params.ro_s_sense * n(EventKind::kRoSSense) +
                             params.dxor_sense * n(EventKind::kDxorSense) +
                             params.ro_d_sense * n(EventKind::kRoDSense) +
                             sa_static * r.latency_s;
  b[Component::kCrossbar] = params.cell_read * n(EventKind::kCellRead) +
                            params.static_crossbar * r.latency_s;
  b[Component::kRegister] = params.register_cycle * n(EventKind::kRegisterCycle) +
                            params.static_register * r.latency_s;
  b[Component::kSelector] = params.selector_cycle * n(EventKind::kSelectorCycle) +
                            params.static_selector * r.latency_s;
  for (const auto& [c, e] : b) r.energy_j += e;
  r.power_w = r.energy_j / r.latency_s;
  r.write_energy_j = params.cell_write * n(EventKind::kCellWrite);
  r.area = area_report(variant, log.scheme, params);
  return r;
}

std::string format_report_table(const EnergyReport& r) {
  std::ostringstream os;
  char line[160];
  const bool sxor = r.scheme == SaScheme::kSxor;
  std::snprintf(line, sizeof line, "%-22s %14s %14s\n", "",
                sxor ? "SXOR-GIFT" : "DXOR-GIFT", "CMOS-GIFT (ref)");
  os << line;
  std::snprintf(line, sizeof line, "%-22s %14.2f %14.1f\n", "Average power (uW)",
                r.power_uw(), CmosReference::kPowerUw);
  os << line;
  std::snprintf(line, sizeof line, "%-22s %14.2f %14.1f\n", "Energy (pJ)",
                r.energy_pj(), CmosReference::kEnergyPj);
  os << line;
  std::snprintf(line, sizeof line, "%-22s %14.4f %14s\n", "Area (mm2)",
                r.area.total_mm2, "--");
  os << line;
  std::snprintf(line, sizeof line, "%-22s %14.2f %14.1f\n", "Latency (us)",
                r.latency_us(), CmosReference::kLatencyUs);
  os << line;
  os << "\nBreakdown (pJ / % of block energy, mm2)\n";
  for (auto c : kAllComponents) {
    const double e = r.breakdown_j.at(c);
    std::snprintf(line, sizeof line, "  %-12s %10.2f %6.1f%% %10.5f\n",
                  to_string(c), e * 1e12, 100.0 * e / r.energy_j,
                  r.area.breakdown_mm2.at(c));
    os << line;
  }
  std::snprintf(line, sizeof line, "\nWrite phase (not in block energy): %.2f pJ\n",
                r.write_energy_j * 1e12);
  os << line;
  return os.str();
}

std::string report_json(const EnergyReport& r) {
  nlohmann::ordered_json j = {
      {"scheme", to_string(r.scheme)},
      {"rounds", r.rounds},
      {"energy_pj", r.energy_pj()},
      {"average_power_uw", r.power_uw()},
      {"latency_us", r.latency_us()},
      {"area_mm2", r.area.total_mm2},
      {"write_phase_pj", r.write_energy_j * 1e12},
  };
  for (auto c : kAllComponents) {
    j["breakdown_pj"][to_string(c)] = r.breakdown_j.at(c) * 1e12;
    j["area_breakdown_mm2"][to_string(c)] = r.area.breakdown_mm2.at(c);
  }
  j["cmos_reference"] = {{"average_power_uw", CmosReference::kPowerUw},
                         {"energy_pj", CmosReference::kEnergyPj},
                         {"latency_us", CmosReference::kLatencyUs},
                         {"note", "90 nm CMOS, static reference values"}};
  return j.dump(2);
}

}  // namespace memgift
