#ifndef MEMGIFT_SWEEP_H_
#define MEMGIFT_SWEEP_H_

// Monte-Carlo robustness sweep over the cycle-to-cycle variation sigma.
//
// Trial t encrypts one random block under one random key with device seed
// derived from (seed, t). The same trial seeds are reused at every sigma, so
// all sigma points see the same keys, plaintexts and standard-normal draws
// (common random numbers) and differ only in the variation amplitude.

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "memgift/pipeline.h"

namespace memgift {

struct SweepOptions {
  SessionConfig base;  // base.device.sigma_c2c is overridden per point
  std::vector<double> sigmas;
  int blocks = 20;  // trials per sigma
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
};

struct SweepPoint {
  double sigma = 0.0;
  int trials = 0;
  std::uint64_t sensed_bits = 0;
  std::uint64_t bit_errors = 0;   // SA decisions differing from stored values
  std::uint64_t block_errors = 0; // ciphertexts differing from the reference

  double bit_error_rate() const {
    return sensed_bits ? static_cast<double>(bit_errors) / sensed_bits : 0.0;
  }
};

struct SweepResult {
  std::vector<SweepPoint> points;

  // Smallest swept sigma with at least one bit error.
  std::optional<double> first_error_sigma() const;
  bool monotone_bit_error_rate() const;
};

// Throws ConfigError on an empty or negative sigma list or blocks < 1.
SweepResult run_sweep(const SweepOptions& options);

// Whitespace-separated columns with a '#' header line.
void write_sweep_columns(std::ostream& out, const SweepResult& result);

}  // namespace memgift

#endif  // MEMGIFT_SWEEP_H_
