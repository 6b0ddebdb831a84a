// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace spcd {
namespace {

std::vector<PointCloud> random_clouds(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<PointCloud> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_cloud(rng, 80 + uniform_below(rng, 120)));
  return out;
}

AugmentConfig small_config(ChannelMode mode = ChannelMode::kAll) {
  AugmentConfig cfg;
  cfg.seed = 99;
  cfg.mode = mode;
  cfg.voxel = VoxelSizePolicy::grid_max(10);
  return cfg;
}

bool same_cloud(const PointCloud& a, const PointCloud& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point &p = a[i], &q = b[i];
    if (p.x != q.x || p.y != q.y || p.z != q.z || p.r != q.r || p.g != q.g || p.b != q.b) return false;
  }
  return true;
}

TEST(UniformBelow, StaysInRange) {
  std::mt19937_64 rng(1);
  for (std::uint64_t n : {1ull, 2ull, 3ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(uniform_below(rng, n), n);
  }
}

TEST(RandomDerangement, HasNoFixedPointsAndIsAPermutation) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 2; n <= 30; ++n) {
    const auto p = random_derangement(n, rng);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NE(p[i], i);
      ASSERT_LT(p[i], n);
      EXPECT_FALSE(seen[p[i]]);
      seen[p[i]] = true;
    }
  }
}

TEST(RandomDerangement, UniformOverDerangementsOfThree) {
  // Two derangements of {0,1,2}; each should appear about half the time.
  std::mt19937_64 rng(3);
  std::map<std::vector<std::size_t>, int> counts;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) ++counts[random_derangement(3, rng)];
  ASSERT_EQ(counts.size(), 2u);
  for (const auto& [perm, c] : counts) EXPECT_NEAR(c, trials / 2, 5 * std::sqrt(trials / 4.0));
}

TEST(AssignDonors, TwoCloudsSwapWithEachOther) {
  EXPECT_EQ(assign_donors(2, 123), (std::vector<std::size_t>{1, 0}));
}

TEST(AssignDonors, DerangementForTenClouds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto d = assign_donors(10, seed);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NE(d[i], i);
  }
}

TEST(AssignDonors, SeedDeterminesAssignment) {
  EXPECT_EQ(assign_donors(25, 7), assign_donors(25, 7));
  bool any_differs = false;
  for (std::uint64_t s = 8; s < 20 && !any_differs; ++s) any_differs = assign_donors(25, 7) != assign_donors(25, s);
  EXPECT_TRUE(any_differs);
}

TEST(AssignDonors, SameClassStaysInGroup) {
  const std::vector<std::string> labels{"a", "b", "a", "c", "b", "a", "b"};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = assign_donors(labels.size(), seed, labels, true);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      EXPECT_EQ(labels[d[i]], labels[i]);
      if (labels[i] != "c") {
        EXPECT_NE(d[i], i);
      }
    }
    EXPECT_EQ(d[3], 3u);  // the only member of its class
  }
}

TEST(AssignDonors, RejectsTooFewCloudsAndMissingLabels) {
  EXPECT_THROW(assign_donors(1, 0), InputError);
  EXPECT_THROW(assign_donors(0, 0), InputError);
  const std::vector<std::string> labels{"a"};
  EXPECT_THROW(assign_donors(3, 0, labels, true), InputError);
}

TEST(AugmentPair, SelfDonorIsRoundTrip) {
  const auto clouds = random_clouds(10, 1);
  const AugmentConfig cfg = small_config();
  const PointCloud rt = reconstruct(decompose(clouds[0], cfg.voxel));
  EXPECT_TRUE(same_cloud(augment_pair(clouds[0], clouds[0], cfg), rt));
}

TEST(AugmentPair, RgbOnlyKeepsTargetVoxelSet) {
  const auto clouds = random_clouds(11, 2);
  const AugmentConfig cfg = small_config(ChannelMode::kRgbOnly);
  const GridGeometry g = shared_geometry(clouds[0], clouds[1], cfg.voxel);
  const PointCloud own = reconstruct(decompose_on(clouds[0], g));
  const PointCloud aug = augment_pair(clouds[0], clouds[1], cfg);
  ASSERT_EQ(aug.size(), own.size());
  for (std::size_t i = 0; i < own.size(); ++i) {
    EXPECT_EQ(aug[i].x, own[i].x);
    EXPECT_EQ(aug[i].y, own[i].y);
    EXPECT_EQ(aug[i].z, own[i].z);
  }
}

TEST(AugmentPair, Deterministic) {
  const auto clouds = random_clouds(12, 2);
  const AugmentConfig cfg = small_config();
  EXPECT_TRUE(same_cloud(augment_pair(clouds[0], clouds[1], cfg), augment_pair(clouds[0], clouds[1], cfg)));
}

TEST(AugmentDataset, SizeAndDeterminism) {
  const auto clouds = random_clouds(13, 10);
  const AugmentConfig cfg = small_config();
  const AugmentedDataset a = augment_dataset(clouds, cfg);
  const AugmentedDataset b = augment_dataset(clouds, cfg);
  ASSERT_EQ(a.clouds.size(), clouds.size());
  EXPECT_EQ(a.donors, b.donors);
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    EXPECT_NE(a.donors[i], i);
    EXPECT_TRUE(same_cloud(a.clouds[i], b.clouds[i]));
  }
}

TEST(AugmentDataset, IndependentOfThreadCount) {
  const auto clouds = random_clouds(14, 6);
  const AugmentConfig cfg = small_config(ChannelMode::kRgbOnly);
  const AugmentedDataset one = augment_dataset(clouds, cfg, {}, 1);
  const AugmentedDataset many = augment_dataset(clouds, cfg, {}, 4);
  EXPECT_EQ(one.donors, many.donors);
  for (std::size_t i = 0; i < clouds.size(); ++i) EXPECT_TRUE(same_cloud(one.clouds[i], many.clouds[i]));
}

TEST(AugmentDataset, MatchesPerPairResults) {
  const auto clouds = random_clouds(15, 4);
  const AugmentConfig cfg = small_config();
  const AugmentedDataset out = augment_dataset(clouds, cfg);
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    EXPECT_TRUE(same_cloud(out.clouds[i], augment_pair(clouds[i], clouds[out.donors[i]], cfg)));
  }
}

TEST(AugmentDataset, EmptyReconstructionFallsBackToInput) {
  const auto clouds = random_clouds(16, 3);
  AugmentConfig cfg = small_config();
  cfg.pi_threshold = 50.0;
  const AugmentedDataset out = augment_dataset(clouds, cfg);
  EXPECT_EQ(out.skipped, (std::vector<std::size_t>{0, 1, 2}));
  for (std::size_t i = 0; i < clouds.size(); ++i) EXPECT_TRUE(same_cloud(out.clouds[i], clouds[i]));
}

TEST(AugmentDataset, NeedsTwoClouds) {
  const auto clouds = random_clouds(17, 1);
  EXPECT_THROW(augment_dataset(clouds, small_config()), InputError);
}

TEST(MixSeed, DistinctStreams) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(5, 3), mix_seed(5, 3));
}

}  // namespace
}  // namespace spcd
