#include "memgift/cli.h"

#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memgift/config.h"
#include "memgift/energy.h"
#include "memgift/error.h"
#include "memgift/gift.h"
#include "memgift/hex.h"
#include "memgift/layout.h"
#include "memgift/masking.h"
#include "memgift/pipeline.h"
#include "memgift/sweep.h"

namespace memgift::cli {
namespace {

constexpr const char* kHexNote =
    "Hex blocks and keys are written most-significant digit first; bit 0 is "
    "the least significant bit of the last digit.";

constexpr const char* kLocalBanner =
    "WARNING: --mode local feeds every slice its own output. This is a "
    "diagnostic negative control and does NOT compute GIFT.\n";

struct Common {
  std::string variant = "gift128";
  std::string scheme = "dxor";
  std::string mode = "permuted";
  std::string params;
  std::optional<std::uint64_t> seed;
  bool ideal = false;
};

struct Options {
  Common common;
  std::string key;
  std::vector<std::string> pt;
  std::string pt_file;
  std::string ct;
  std::string trace;
  std::string analog_trace;
  std::string mask;
  int remask_every = 0;
  bool verify = false;
  std::string out;
  bool json = false;
  std::string kat_file;
  bool kat_pipeline = false;
  std::string sigmas = "0,0.05,0.1,0.15,0.2,0.25,0.3";
  int blocks = 20;
  int threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_device) {
  cmd->add_option("--variant", c.variant, "gift64 or gift128")
      ->capture_default_str();
  if (!with_device) return;
  cmd->add_option("--scheme", c.scheme, "sense-amplifier scheme: sxor or dxor")
      ->capture_default_str();
  cmd->add_option("--mode", c.mode, "feedback wiring: permuted or local")
      ->capture_default_str();
  cmd->add_option("--params", c.params, "JSON parameter file (device, sense, energy)");
  cmd->add_option("--seed", c.seed, "device variation seed");
  cmd->add_flag("--ideal", c.ideal, "ideal devices: no D2D or C2C variation");
}

ParamSet load_param_set(const Common& c) {
  ParamSet p = c.params.empty() ? ParamSet{} : load_params(c.params);
  if (c.seed) p.device.seed = *c.seed;
  if (c.ideal) {
    p.device.sigma_d2d = 0.0;
    p.device.sigma_c2c = 0.0;
  }
  return p;
}

SessionConfig session_config(const Common& c, const ParamSet& p) {
  SessionConfig cfg;
  cfg.variant = parse_variant(c.variant);
  cfg.scheme = parse_sa_scheme(c.scheme);
  cfg.mode = parse_feedback_mode(c.mode);
  cfg.device = p.device;
  cfg.sense = p.sense;
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open output file " + path);
  return f;
}

std::vector<std::string> read_hex_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(b, e - b + 1));
  }
  return lines;
}

std::uint8_t parse_mask(const std::string& s) {
  std::string digits = s;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
  if (digits.size() != 1) throw InputError("--mask takes a single hex nibble");
  return hex_digit_value(digits[0]);
}

int cmd_encrypt(const Options& o, std::ostream& out, std::ostream& err) {
  const ParamSet p = load_param_set(o.common);
  const SessionConfig cfg = session_config(o.common, p);
  if (o.key.empty()) throw InputError("--key is required");
  const KeyState key = KeyState::from_hex(o.key);

  std::vector<CipherState> blocks;
  std::vector<std::string> hex = o.pt;
  if (!o.pt_file.empty()) {
    auto more = read_hex_lines(o.pt_file);
    hex.insert(hex.end(), more.begin(), more.end());
  }
  if (hex.empty()) throw InputError("no plaintext given (--pt or --pt-file)");
  for (const auto& h : hex) blocks.push_back(CipherState::from_hex(h, cfg.variant));
  if (o.remask_every < 0) throw ConfigError("--remask-every must be non-negative");
  if (o.remask_every > 0 && o.mask.empty()) {
    throw ConfigError("--remask-every needs --mask for the first mask");
  }

  if (cfg.mode == FeedbackMode::kLocal) err << kLocalBanner;

  EncryptionSession session(key, cfg);
  std::optional<MaskPair> mask;
  std::mt19937_64 mask_rng(cfg.device.seed ^ 0x4D41534BULL);
  if (!o.mask.empty()) {
    mask = MaskPair{parse_mask(o.mask)};
    apply_mask(session, *mask);
  }

  std::ofstream trace_file, analog_file;
  if (!o.trace.empty()) trace_file = open_output(o.trace);
  if (!o.analog_trace.empty()) analog_file = open_output(o.analog_trace);
  const TraceLevel level = !o.analog_trace.empty() ? TraceLevel::kAnalog
                           : !o.trace.empty()      ? TraceLevel::kRounds
                                                   : TraceLevel::kNone;

  int mismatches = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (mask && o.remask_every > 0 && i > 0 && i % o.remask_every == 0) {
      mask = MaskPair{static_cast<std::uint8_t>(mask_rng() & 0xF)};
      apply_mask(session, *mask);
    }
    const EncryptResult r = mask ? encrypt_masked(session, blocks[i], *mask, level)
                                 : session.encrypt(blocks[i], level);
    if (trace_file.is_open()) write_round_trace(trace_file, session, r);
    if (analog_file.is_open()) write_analog_trace(analog_file, r);
    out << r.ciphertext.to_hex() << '\n';
    if (o.verify && r.ciphertext != encrypt_block(blocks[i], key, cfg.variant)) {
      err << "block " << i << ": crossbar output differs from reference\n";
      ++mismatches;
    }
  }
  return mismatches ? kExitVerification : kExitOk;
}

int cmd_decrypt(const Options& o, std::ostream& out) {
  const CipherVariant v = parse_variant(o.common.variant);
  if (o.key.empty()) throw InputError("--key is required");
  if (o.ct.empty()) throw InputError("--ct is required");
  const KeyState key = KeyState::from_hex(o.key);
  out << decrypt_block(CipherState::from_hex(o.ct, v), key, v).to_hex() << '\n';
  return kExitOk;
}

int cmd_compile_layout(const Options& o, std::ostream& out) {
  const CipherVariant v = parse_variant(o.common.variant);
  if (o.key.empty()) throw InputError("--key is required");
  const LayoutBundle layout = compile_layout(KeyState::from_hex(o.key), v);
  if (o.out.empty()) {
    export_layout(layout, out);
  } else {
    std::ofstream f = open_output(o.out);
    export_layout(layout, f);
  }
  return kExitOk;
}

int cmd_kat(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.kat_file.empty()) throw InputError("--file is required");
  std::ifstream in(o.kat_file);
  if (!in) throw InputError("cannot open KAT file " + o.kat_file);
  std::vector<KatVector> vectors;
  try {
    vectors = parse_kat(in);
  } catch (const InputError& e) {
    throw InputError(o.kat_file + ": " + e.what());
  }

  std::optional<ParamSet> p;
  if (o.kat_pipeline) p = load_param_set(o.common);

  int pass = 0, fail = 0;
  for (const auto& kv : vectors) {
    const CipherVariant v = variant_for_width(kv.plaintext.width());
    bool ok = encrypt_block(kv.plaintext, kv.key, v) == kv.ciphertext &&
              decrypt_block(kv.ciphertext, kv.key, v) == kv.plaintext;
    if (ok && p) {
      Common c = o.common;
      c.variant = v.name();
      EncryptionSession s(kv.key, session_config(c, *p));
      ok = s.encrypt(kv.plaintext).ciphertext == kv.ciphertext;
    }
    if (ok) {
      ++pass;
    } else {
      ++fail;
      err << o.kat_file << ":" << kv.line << ": FAIL\n";
    }
  }
  out << "KAT " << (o.kat_pipeline ? "reference+crossbar" : "reference")
      << ": " << pass << " passed, " << fail << " failed\n";
  return fail ? kExitVerification : kExitOk;
}

int cmd_energy_report(const Options& o, std::ostream& out) {
  const ParamSet p = load_param_set(o.common);
  const SessionConfig cfg = session_config(o.common, p);
  const KeyState key = o.key.empty() ? KeyState{} : KeyState::from_hex(o.key);
  const CipherState pt = o.pt.empty() ? CipherState(cfg.variant.block_bits)
                                      : CipherState::from_hex(o.pt.front(), cfg.variant);
  EncryptionSession session(key, cfg);
  EventLog log = session.encrypt(pt).events;
  // Attach the initialization writes so they show up in the write-phase line.
  log.add(EventKind::kCellWrite, session.events().count(EventKind::kCellWrite));
  const EnergyReport report = account(log, p.energy, cfg.variant);
  const std::string text =
      o.json ? report_json(report) + "\n" : format_report_table(report);
  if (o.out.empty()) {
    out << text;
  } else {
    open_output(o.out) << text;
  }
  return kExitOk;
}

std::vector<double> parse_sigmas(const std::string& list) {
  std::vector<double> v;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad sigma value '" + item + "'");
    }
  }
  return v;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const ParamSet p = load_param_set(o.common);
  SweepOptions opt;
  opt.base = session_config(o.common, p);
  opt.sigmas = parse_sigmas(o.sigmas);
  opt.blocks = o.blocks;
  opt.threads = o.threads;
  opt.seed = p.device.seed;
  const SweepResult r = run_sweep(opt);
  if (o.out.empty()) {
    write_sweep_columns(out, r);
  } else {
    std::ofstream f = open_output(o.out);
    write_sweep_columns(f, r);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string("Bit-sliced memristive GIFT accelerator simulator.\n") +
               kHexNote};
  app.require_subcommand(1);
  Options o;

  auto* enc = app.add_subcommand("encrypt", "encrypt blocks on the simulated crossbar");
  add_common(enc, o.common, true);
  enc->add_option("--key", o.key, "128-bit key, 32 hex digits");
  enc->add_option("--pt", o.pt, "plaintext block(s) in hex");
  enc->add_option("--pt-file", o.pt_file, "file with one hex plaintext per line");
  enc->add_option("--trace", o.trace, "write per-round JSON lines here");
  enc->add_option("--analog-trace", o.analog_trace,
                  "write per-column node voltages as JSON lines here");
  enc->add_option("--mask", o.mask, "nibble mask for the S-box tables (one hex digit)");
  enc->add_option("--remask-every", o.remask_every,
                  "draw a fresh mask every N blocks (0: once per session)");
  enc->add_flag("--verify", o.verify, "compare every block with the reference cipher");

  auto* dec = app.add_subcommand("decrypt", "reference (software) decryption");
  add_common(dec, o.common, false);
  dec->add_option("--key", o.key, "128-bit key, 32 hex digits");
  dec->add_option("--ct", o.ct, "ciphertext block in hex");

  auto* lay = app.add_subcommand("compile-layout", "write the crossbar layout for a key");
  add_common(lay, o.common, false);
  lay->add_option("--key", o.key, "128-bit key, 32 hex digits");
  lay->add_option("--out", o.out, "layout file (default: stdout)");

  auto* kat = app.add_subcommand("kat", "run a known-answer test file");
  add_common(kat, o.common, true);
  kat->add_option("--file", o.kat_file, "lines of key=<hex> pt=<hex> ct=<hex>");
  kat->add_flag("--pipeline", o.kat_pipeline,
                "also run every vector through the crossbar pipeline");

  auto* en = app.add_subcommand("energy-report", "energy, power, latency and area of one block");
  add_common(en, o.common, true);
  en->add_option("--key", o.key, "key (default all zero)");
  en->add_option("--pt", o.pt, "plaintext (default all zero)")->expected(1);
  en->add_flag("--json", o.json, "emit JSON instead of a table");
  en->add_option("--out", o.out, "output file (default: stdout)");

  auto* sw = app.add_subcommand("sweep", "Monte-Carlo bit-error rate versus C2C sigma");
  add_common(sw, o.common, true);
  sw->add_option("--sigmas", o.sigmas, "comma-separated sigma_c2c values")
      ->capture_default_str();
  sw->add_option("--blocks", o.blocks, "random blocks per sigma")->capture_default_str();
  sw->add_option("--threads", o.threads, "worker threads (0: all cores)");
  sw->add_option("--out", o.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (enc->parsed()) return cmd_encrypt(o, out, err);
    if (dec->parsed()) return cmd_decrypt(o, out);
    if (lay->parsed()) return cmd_compile_layout(o, out);
    if (kat->parsed()) return cmd_kat(o, out, err);
    if (en->parsed()) return cmd_energy_report(o, out);
    if (sw->parsed()) return cmd_sweep(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const LayoutError& e) {
    err << "layout error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitInput;
}

}  // namespace memgift::cli
