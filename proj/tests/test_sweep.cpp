#include <gtest/gtest.h>

#include <sstream>

#include "memgift/error.h"
#include "memgift/sweep.h"

namespace memgift {
namespace {

SweepOptions options(std::vector<double> sigmas, int blocks, int threads) {
  SweepOptions o;
  o.sigmas = std::move(sigmas);
  o.blocks = blocks;
  o.threads = threads;
  o.seed = 9;
  return o;
}

TEST(Sweep, ZeroSigmaHasNoErrors) {
  const SweepResult r = run_sweep(options({0.0}, 20, 2));
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0].sensed_bits, 20u * 128 * 40);
  EXPECT_EQ(r.points[0].bit_errors, 0u);
  EXPECT_EQ(r.points[0].block_errors, 0u);
  EXPECT_FALSE(r.first_error_sigma().has_value());
}

// Below sigma = 1/12 no clamped draw can push a node across its reference.
TEST(Sweep, NoErrorsBelowClampBound) {
  const SweepResult r = run_sweep(options({0.02, 0.05, 0.08}, 10, 2));
  for (const auto& p : r.points) EXPECT_EQ(p.bit_errors, 0u) << p.sigma;
}

TEST(Sweep, ErrorRateRisesWithSigma) {
  const SweepResult r = run_sweep(options({0.3, 0.0, 0.15, 0.2, 0.1}, 10, 3));
  ASSERT_EQ(r.points.size(), 5u);
  EXPECT_DOUBLE_EQ(r.points[0].sigma, 0.0);
  EXPECT_TRUE(r.monotone_bit_error_rate());
  EXPECT_GT(r.points.back().bit_errors, 0u);
  ASSERT_TRUE(r.first_error_sigma().has_value());
}

TEST(Sweep, IndependentOfThreadCount) {
  const SweepResult a = run_sweep(options({0.12, 0.2}, 8, 1));
  const SweepResult b = run_sweep(options({0.12, 0.2}, 8, 4));
  std::ostringstream sa, sb;
  write_sweep_columns(sa, a);
  write_sweep_columns(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Sweep, RejectsBadOptions) {
  EXPECT_THROW(run_sweep(options({}, 1, 1)), ConfigError);
  EXPECT_THROW(run_sweep(options({-0.1}, 1, 1)), ConfigError);
  EXPECT_THROW(run_sweep(options({0.1}, 0, 1)), ConfigError);
}

TEST(Sweep, ColumnOutput) {
  std::ostringstream os;
  write_sweep_columns(os, run_sweep(options({0.0, 0.3}, 2, 1)));
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("# sigma_c2c trials sensed_bits bit_errors", 0), 0u);
  EXPECT_NE(s.find("# first_error_sigma 0.3"), std::string::npos) << s;
}

}  // namespace
}  // namespace memgift
