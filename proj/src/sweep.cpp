#include "memgift/sweep.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <random>
#include <thread>

#include "memgift/error.h"

namespace memgift {
namespace {

struct TrialInput {
  KeyState key;
  CipherState plaintext;
  std::uint64_t device_seed = 0;
};

TrialInput make_trial(std::uint64_t seed, int trial, const CipherVariant& v) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x5EEDu};
  std::mt19937_64 rng(seq);
  TrialInput t;
  std::array<std::uint16_t, 8> words{};
  for (auto& w : words) w = static_cast<std::uint16_t>(rng());
  t.key = KeyState(words);
  t.plaintext = CipherState(v.block_bits);
  for (int j = 0; j < v.nibbles(); ++j) {
    t.plaintext.set_nibble(j, static_cast<std::uint8_t>(rng() & 0xF));
  }
  t.device_seed = rng();
  return t;
}

}  // namespace

std::optional<double> SweepResult::first_error_sigma() const {
  for (const auto& p : points) {
    if (p.bit_errors > 0) return p.sigma;
  }
  return std::nullopt;
}

bool SweepResult::monotone_bit_error_rate() const {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].bit_error_rate() < points[i - 1].bit_error_rate()) return false;
  }
  return true;
}

SweepResult run_sweep(const SweepOptions& options) {
  if (options.sigmas.empty()) throw ConfigError("sweep needs at least one sigma");
  if (options.blocks < 1) throw ConfigError("sweep needs at least one block");
  for (double s : options.sigmas) {
    if (!(s >= 0.0)) throw ConfigError("sigma values must be non-negative");
  }
  std::vector<double> sigmas = options.sigmas;
  std::sort(sigmas.begin(), sigmas.end());

  const CipherVariant& v = options.base.variant;
  const int trials = options.blocks;
  const int cells = static_cast<int>(sigmas.size()) * trials;
  std::vector<SweepPoint> per_cell(cells);

  std::vector<TrialInput> inputs;
  std::vector<CipherState> reference;
  for (int t = 0; t < trials; ++t) {
    inputs.push_back(make_trial(options.seed, t, v));
    reference.push_back(encrypt_block(inputs.back().plaintext, inputs.back().key, v));
  }

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next++; c < cells; c = next++) {
      const int s = c / trials;
      const int t = c % trials;
      SessionConfig cfg = options.base;
      cfg.device.sigma_c2c = sigmas[s];
      cfg.device.seed = inputs[t].device_seed;
      EncryptionSession session(inputs[t].key, cfg);
      const EncryptResult r = session.encrypt(inputs[t].plaintext);
      SweepPoint& p = per_cell[c];
      p.sensed_bits = r.sensed_bits;
      p.bit_errors = r.sense_errors;
      p.block_errors = r.ciphertext == reference[t] ? 0 : 1;
    }
  };

  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, cells);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SweepResult result;
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    SweepPoint p;
    p.sigma = sigmas[s];
    p.trials = trials;
    for (int t = 0; t < trials; ++t) {
      const SweepPoint& c = per_cell[s * trials + t];
      p.sensed_bits += c.sensed_bits;
      p.bit_errors += c.bit_errors;
      p.block_errors += c.block_errors;
    }
    result.points.push_back(p);
  }
  return result;
}

void write_sweep_columns(std::ostream& out, const SweepResult& result) {
  out << "# sigma_c2c trials sensed_bits bit_errors bit_error_rate block_errors\n";
  char line[160];
  for (const auto& p : result.points) {
    std::snprintf(line, sizeof line, "%.6g %d %llu %llu %.6e %llu\n", p.sigma,
                  p.trials, static_cast<unsigned long long>(p.sensed_bits),
                  static_cast<unsigned long long>(p.bit_errors), p.bit_error_rate(),
                  static_cast<unsigned long long>(p.block_errors));
    out << line;
  }
  if (auto s = result.first_error_sigma()) {
    out << "# first_error_sigma " << *s << '\n';
  } else {
    out << "# first_error_sigma none\n";
  }
}

}  // namespace memgift
