// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "spectral_pcd/verify.hpp"

namespace spcd {
namespace {

const CheckResult* find(const VerifyReport& r, const std::string& name) {
  for (const CheckResult& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TEST(Verify, SmallRunPasses) {
  const VerifyReport r = run_verification({});
  ASSERT_EQ(r.checks.size(), 6u);
  for (const CheckResult& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    EXPECT_LE(c.max_error, c.tolerance) << c.name;
  }
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, PerturbedTransformIsCaught) {
  VerifyOptions opts;
  opts.fft_perturbation = 1e-3;
  const VerifyReport r = run_verification(opts);
  EXPECT_FALSE(r.all_passed());
  const CheckResult* fft = find(r, "fft_matches_direct_sum");
  ASSERT_NE(fft, nullptr);
  EXPECT_FALSE(fft->passed);
  EXPECT_GE(fft->max_error, 1e-3 * 0.999);
}

TEST(Verify, DeterministicForSeed) {
  const VerifyReport a = run_verification({});
  const VerifyReport b = run_verification({});
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].max_error, b.checks[i].max_error);
}

}  // namespace
}  // namespace spcd
