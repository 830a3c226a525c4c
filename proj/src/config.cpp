#include "memgift/config.h"

#include <fstream>
#include <functional>
#include <map>
#include <string>

#include <json.hpp>

#include "memgift/error.h"

namespace memgift {
namespace {

using json = nlohmann::json;
using Setter = std::function<void(const json&)>;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

Setter num(double& field, const std::string& key) {
  return [&field, key](const json& v) { field = as_number(v, key); };
}

void apply(const json& obj, const std::string& section,
           const std::map<std::string, Setter>& setters) {
  if (!obj.is_object()) throw ConfigError("'" + section + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("unknown key '" + key + "' in section '" + section + "'");
    }
    it->second(value);
  }
}

void apply_device(const json& obj, DeviceParams& d) {
  apply(obj, "device",
        {{"r_lrs", num(d.r_lrs, "r_lrs")},
         {"r_hrs", num(d.r_hrs, "r_hrs")},
         {"wire_r_per_cell", num(d.wire_r_per_cell, "wire_r_per_cell")},
         {"r_access", num(d.r_access, "r_access")},
         {"sigma_d2d", num(d.sigma_d2d, "sigma_d2d")},
         {"sigma_c2c", num(d.sigma_c2c, "sigma_c2c")},
         {"vdd", num(d.vdd, "vdd")},
         {"v_read", num(d.v_read, "v_read")},
         {"seed", [&d](const json& v) {
            if (!v.is_number_unsigned()) {
              throw ConfigError("'seed' must be a non-negative integer");
            }
            d.seed = v.get<std::uint64_t>();
          }}});
}

void apply_sense(const json& obj, SenseAmpParams& s) {
  apply(obj, "sense",
        {{"topology",
          [&s](const json& v) {
            if (!v.is_string()) throw ConfigError("'topology' must be a string");
            s.topology = parse_sense_topology(v.get<std::string>());
          }},
         {"sxor",
          [&s](const json& v) {
            apply(v, "sense.sxor",
                  {{"m1", num(s.sxor.m1, "m1")},
                   {"m2", num(s.sxor.m2, "m2")},
                   {"vth", num(s.sxor.vth, "vth")}});
          }},
         {"ro_s",
          [&s](const json& v) {
            apply(v, "sense.ro_s",
                  {{"m1", num(s.ro_s.m1, "m1")}, {"vth", num(s.ro_s.vth, "vth")}});
          }},
         {"dxor",
          [&s](const json& v) {
            apply(v, "sense.dxor",
                  {{"m_and", num(s.dxor.m_and, "m_and")},
                   {"m_nor", num(s.dxor.m_nor, "m_nor")},
                   {"vref_and", num(s.dxor.vref_and, "vref_and")},
                   {"vref_nor", num(s.dxor.vref_nor, "vref_nor")}});
          }},
         {"ro_d", [&s](const json& v) {
            apply(v, "sense.ro_d",
                  {{"m", num(s.ro_d.m, "m")}, {"vref", num(s.ro_d.vref, "vref")}});
          }}});
}

void apply_energy(const json& obj, EnergyParams& e) {
  apply(obj, "energy",
        {{"sxor_sense", num(e.sxor_sense, "sxor_sense")},
         {"dxor_sense", num(e.dxor_sense, "dxor_sense")},
         {"ro_s_sense", num(e.ro_s_sense, "ro_s_sense")},
         {"ro_d_sense", num(e.ro_d_sense, "ro_d_sense")},
         {"decoder_cycle", num(e.decoder_cycle, "decoder_cycle")},
         {"selector_cycle", num(e.selector_cycle, "selector_cycle")},
         {"register_cycle", num(e.register_cycle, "register_cycle")},
         {"cell_read", num(e.cell_read, "cell_read")},
         {"cell_write", num(e.cell_write, "cell_write")},
         {"static_decoders", num(e.static_decoders, "static_decoders")},
         {"static_sxor_sa", num(e.static_sxor_sa, "static_sxor_sa")},
         {"static_dxor_sa", num(e.static_dxor_sa, "static_dxor_sa")},
         {"static_crossbar", num(e.static_crossbar, "static_crossbar")},
         {"static_register", num(e.static_register, "static_register")},
         {"static_selector", num(e.static_selector, "static_selector")},
         {"clock_hz", num(e.clock_hz, "clock_hz")},
         {"area_decoder_per_slice", num(e.area_decoder_per_slice, "area_decoder_per_slice")},
         {"area_sxor_sa_per_slice", num(e.area_sxor_sa_per_slice, "area_sxor_sa_per_slice")},
         {"area_dxor_sa_per_slice", num(e.area_dxor_sa_per_slice, "area_dxor_sa_per_slice")},
         {"area_crossbar_per_slice", num(e.area_crossbar_per_slice, "area_crossbar_per_slice")},
         {"area_register_per_bit", num(e.area_register_per_bit, "area_register_per_bit")},
         {"area_selector", num(e.area_selector, "area_selector")}});
}

}  // namespace

ParamSet read_params(std::istream& in, const ParamSet& base) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parameter file is not valid JSON: ") + e.what());
  }
  ParamSet p = base;
  apply(doc, "top level",
        {{"device", [&p](const json& v) { apply_device(v, p.device); }},
         {"sense", [&p](const json& v) { apply_sense(v, p.sense); }},
         {"energy", [&p](const json& v) { apply_energy(v, p.energy); }}});
  p.device.validate();
  p.sense.validate(p.device.vdd);
  p.energy.validate();
  return p;
}

ParamSet load_params(const std::filesystem::path& path, const ParamSet& base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open parameter file " + path.string());
  try {
    return read_params(in, base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace memgift
