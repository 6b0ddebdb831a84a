// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "test_util.hpp"

namespace spcd {
namespace {

using spcd::testing::point_at;
using spcd::testing::unit_geometry;

const GridGeometry kGeom = make_geometry({{-1, -1, -1}, {1, 1, 1}}, 0.25);  // 8^3

std::vector<std::size_t> occupied_of(const AmplitudePhase& ap, double threshold = 0.5) {
  return occupied_indices(reconstruct_grid(ap), threshold);
}

/// The cloud on `g` whose occupied voxels are those of `c` shifted cyclically
/// by (dx, dy, dz), with the same colors.
PointCloud cyclic_shift(const PointCloud& c, const GridGeometry& g, std::size_t dx, std::size_t dy,
                        std::size_t dz) {
  std::vector<Point> out;
  for (const Point& p : c) {
    const std::size_t i = cell_of(p.x, g.bounds.lo[0], g.voxel_size, g.dims.w);
    const std::size_t j = cell_of(p.y, g.bounds.lo[1], g.voxel_size, g.dims.h);
    const std::size_t k = cell_of(p.z, g.bounds.lo[2], g.voxel_size, g.dims.d);
    out.push_back(point_at(g, (i + dx) % g.dims.w, (j + dy) % g.dims.h, (k + dz) % g.dims.d, p.r, p.g, p.b));
  }
  return PointCloud(std::move(out));
}

TEST(Decompose, SinglePointAtOrigin) {
  const AmplitudePhase ap = decompose(PointCloud({{0, 0, 0, 0.3, 0.6, 0.9}}), 1.0);
  ASSERT_EQ(ap.geometry.dims, (Dims{1, 1, 1}));
  EXPECT_EQ(ap.amplitude[3][0], 1.0);
  EXPECT_EQ(ap.phase[3][0], 0.0);
  EXPECT_EQ(ap.amplitude[0][0], 0.3);
}

TEST(Decompose, SingleOccupiedVoxelHasFlatOccupancyAmplitude) {
  const GridGeometry g = unit_geometry(4, 4, 4);
  const AmplitudePhase ap = decompose_on(PointCloud({point_at(g, 2, 1, 3, 1, 1, 1)}), g);
  ASSERT_EQ(ap.amplitude[3].size(), 64u);
  for (double a : ap.amplitude[3]) EXPECT_NEAR(a, 1.0, 1e-12);
}

TEST(Decompose, ShapeFollowsGeometryFormula) {
  std::mt19937_64 rng(31);
  for (double v : {0.1, 0.33, 0.7}) {
    const PointCloud c = random_cloud(rng, 50);
    const Bounds b = bounds_of(c);
    std::size_t expected = 1;
    for (int a = 0; a < 3; ++a) {
      expected *= std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b.hi[a] - b.lo[a]) / v)));
    }
    const AmplitudePhase ap = decompose(c, v);
    for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
      EXPECT_EQ(ap.amplitude[ch].size(), expected);
      EXPECT_EQ(ap.phase[ch].size(), expected);
    }
  }
}

TEST(Reconstruct, LosslessRoundTrip) {
  std::mt19937_64 rng(32);
  for (std::size_t n : {1u, 10u, 500u, 2048u}) {
    const PointCloud c = random_cloud(rng, n);
    const GridGeometry g = VoxelSizePolicy::grid_max(24).geometry_for(bounds_of(c));
    const VoxelGrid vox = voxelize(c, g);
    const VoxelGrid back = reconstruct_grid(decompose_on(c, g));
    const auto expected = occupied_indices(vox);
    ASSERT_EQ(occupied_indices(back), expected);
    for (std::size_t idx : expected) {
      for (std::size_t ch = 0; ch < 3; ++ch) EXPECT_NEAR(back.values[ch][idx], vox.values[ch][idx], 1e-6);
    }
    EXPECT_EQ(reconstruct(decompose_on(c, g)).size(), expected.size());
  }
}

TEST(Reconstruct, ThresholdZeroOnMismatchedPairEmitsEveryVoxel) {
  std::mt19937_64 rng(33);
  const auto a = decompose_on(random_cloud_on_grid(rng, kGeom, 40), kGeom);
  const auto b = decompose_on(random_cloud_on_grid(rng, kGeom, 90), kGeom);
  const auto swapped = amplitude_swap(a, b).first;
  EXPECT_EQ(reconstruct(swapped, {0.0, ChannelMode::kAll}).size(), kGeom.voxels());
}

TEST(Reconstruct, ThresholdAboveOneIsEmpty) {
  std::mt19937_64 rng(34);
  const auto ap = decompose_on(random_cloud_on_grid(rng, kGeom, 30), kGeom);
  EXPECT_THROW(reconstruct(ap, {1.5, ChannelMode::kAll}), EmptyReconstructionError);
  try {
    reconstruct(ap, {1.5, ChannelMode::kAll});
  } catch (const EmptyReconstructionError& e) {
    EXPECT_NEAR(e.max_pi(), 1.0, 1e-9);
    EXPECT_EQ(e.threshold(), 1.5);
  }
}

TEST(Reconstruct, NegativeThresholdIsParameterError) {
  std::mt19937_64 rng(35);
  const auto ap = decompose_on(random_cloud_on_grid(rng, kGeom, 5), kGeom);
  EXPECT_THROW(reconstruct(ap, {-0.5, ChannelMode::kAll}), ParameterError);
}

TEST(Reconstruct, PointCountIsNonIncreasingInThreshold) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 5; ++t) {
    const auto a = decompose_on(random_cloud_on_grid(rng, kGeom, 100), kGeom);
    const auto b = decompose_on(random_cloud_on_grid(rng, kGeom, 60), kGeom);
    const auto mixed = amplitude_swap(a, b).first;
    const VoxelGrid grid = reconstruct_grid(mixed);
    std::size_t prev = kGeom.voxels() + 1;
    for (double thr : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25}) {
      const std::size_t n = occupied_indices(grid, thr).size();
      EXPECT_LE(n, prev) << "threshold " << thr;
      prev = n;
    }
  }
}

class SwapTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(37);
    a = decompose_on(random_cloud_on_grid(rng, kGeom, 120), kGeom);
    b = decompose_on(random_cloud_on_grid(rng, kGeom, 70), kGeom);
  }
  AmplitudePhase a, b;
};

TEST_F(SwapTest, AmplitudeSwapSelfIsIdentity) {
  for (ChannelMode m : {ChannelMode::kAll, ChannelMode::kRgbOnly}) {
    const auto [x, y] = amplitude_swap(a, a, m);
    EXPECT_EQ(x, a);
    EXPECT_EQ(y, a);
  }
}

TEST_F(SwapTest, AmplitudeSwapIsInvolution) {
  for (ChannelMode m : {ChannelMode::kAll, ChannelMode::kRgbOnly}) {
    const auto once = amplitude_swap(a, b, m);
    const auto twice = amplitude_swap(once.first, once.second, m);
    EXPECT_EQ(twice.first, a);
    EXPECT_EQ(twice.second, b);
  }
}

TEST_F(SwapTest, AmplitudeSwapExchangesSelectedChannels) {
  const auto [x, y] = amplitude_swap(a, b, ChannelMode::kRgbOnly);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_EQ(x.amplitude[c], b.amplitude[c]);
    EXPECT_EQ(y.amplitude[c], a.amplitude[c]);
  }
  EXPECT_EQ(x.amplitude[3], a.amplitude[3]);
  EXPECT_EQ(y.amplitude[3], b.amplitude[3]);
  EXPECT_EQ(x.phase, a.phase);
  EXPECT_EQ(y.phase, b.phase);
  const auto [p, q] = amplitude_swap(a, b, ChannelMode::kAll);
  EXPECT_EQ(p.amplitude, b.amplitude);
  EXPECT_EQ(q.amplitude, a.amplitude);
}

TEST_F(SwapTest, RgbOnlySwapPreservesOccupiedSets) {
  const auto [x, y] = amplitude_swap(a, b, ChannelMode::kRgbOnly);
  EXPECT_EQ(occupied_of(x), occupied_of(a));
  EXPECT_EQ(occupied_of(y), occupied_of(b));
}

TEST_F(SwapTest, PhaseSwapSelfIsIdentityAndInvolution) {
  const auto [x, y] = phase_swap(a, a);
  EXPECT_EQ(x, a);
  EXPECT_EQ(y, a);
  const auto once = phase_swap(a, b);
  const auto twice = phase_swap(once.first, once.second);
  EXPECT_EQ(twice.first, a);
  EXPECT_EQ(twice.second, b);
}

TEST_F(SwapTest, PhaseThenAmplitudeSwapFullyExchanges) {
  const auto ph = phase_swap(a, b);
  const auto both = amplitude_swap(ph.first, ph.second, ChannelMode::kAll);
  EXPECT_EQ(both.first.amplitude, b.amplitude);
  EXPECT_EQ(both.first.phase, b.phase);
  EXPECT_EQ(both.second.amplitude, a.amplitude);
  EXPECT_EQ(both.second.phase, a.phase);
}

TEST(PhaseSwap, ExchangesOccupiedSetsOfShiftedPair) {
  // A cyclic shift leaves every amplitude unchanged, so swapping phases
  // reproduces the other cloud's occupancy exactly.
  std::mt19937_64 rng(38);
  const GridGeometry g = unit_geometry(8, 8, 8);
  const PointCloud ca = random_cloud_on_grid(rng, g, 60);
  const PointCloud cb = cyclic_shift(ca, g, 3, 5, 1);
  const auto a = decompose_on(ca, g);
  const auto b = decompose_on(cb, g);
  const auto [x, y] = phase_swap(a, b);
  EXPECT_EQ(occupied_of(x), occupied_of(b));
  EXPECT_EQ(occupied_of(y), occupied_of(a));
  EXPECT_NE(occupied_of(a), occupied_of(b));
}

TEST(Swap, GeometryMismatchIsShapeError) {
  std::mt19937_64 rng(39);
  const auto a = decompose_on(random_cloud_on_grid(rng, unit_geometry(4, 4, 4), 5), unit_geometry(4, 4, 4));
  const auto b = decompose_on(random_cloud_on_grid(rng, unit_geometry(4, 4, 5), 5), unit_geometry(4, 4, 5));
  EXPECT_THROW(amplitude_swap(a, b), ShapeError);
  EXPECT_THROW(phase_swap(a, b), ShapeError);
}

TEST(DecomposePair, SharesUnionGeometry) {
  const PointCloud a({{0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}});
  const PointCloud b({{-2, 0.5, 0.5, 0, 0, 0}});
  const auto [x, y] = decompose_pair(a, b, VoxelSizePolicy::fixed(0.5));
  EXPECT_EQ(x.geometry, y.geometry);
  EXPECT_EQ(x.geometry.bounds.lo[0], -2.0);
  EXPECT_EQ(x.geometry.dims, (Dims{6, 2, 2}));
}

TEST(Interpolate, EndpointsAreExact) {
  std::mt19937_64 rng(40);
  const auto a = decompose_on(random_cloud_on_grid(rng, kGeom, 50), kGeom);
  const auto b = decompose_on(random_cloud_on_grid(rng, kGeom, 50), kGeom);
  EXPECT_EQ(interpolate_amplitude(a.amplitude, b.amplitude, 0.0), a.amplitude);
  EXPECT_EQ(interpolate_amplitude(a.amplitude, b.amplitude, 1.0), b.amplitude);
}

TEST(Interpolate, Midpoint) {
  const ChannelArray<double> two{std::vector<double>(5, 2.0), std::vector<double>(5, 2.0),
                                 std::vector<double>(5, 2.0), std::vector<double>(5, 2.0)};
  const ChannelArray<double> four{std::vector<double>(5, 4.0), std::vector<double>(5, 4.0),
                                  std::vector<double>(5, 4.0), std::vector<double>(5, 4.0)};
  for (const auto& ch : interpolate_amplitude(two, four, 0.5)) {
    for (double v : ch) EXPECT_EQ(v, 3.0);
  }
}

TEST(Interpolate, StaysBetweenInputsAndIsLinear) {
  std::mt19937_64 rng(41);
  const auto a = decompose_on(random_cloud_on_grid(rng, kGeom, 80), kGeom);
  const auto b = decompose_on(random_cloud_on_grid(rng, kGeom, 20), kGeom);
  for (double gamma : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto out = interpolate_amplitude(a.amplitude, b.amplitude, gamma);
    for (std::size_t c = 0; c < kNumChannels; ++c) {
      for (std::size_t i = 0; i < out[c].size(); ++i) {
        const double x = a.amplitude[c][i], y = b.amplitude[c][i];
        EXPECT_GE(out[c][i], std::min(x, y));
        EXPECT_LE(out[c][i], std::max(x, y));
        EXPECT_NEAR(out[c][i], x + gamma * (y - x), 1e-12 * std::max({1.0, x, y}));
      }
    }
  }
}

TEST(Interpolate, RejectsBadGammaAndShapes) {
  const ChannelArray<double> a = make_channels<double>(3);
  const ChannelArray<double> b = make_channels<double>(4);
  EXPECT_THROW(interpolate_amplitude(a, a, -0.01), ParameterError);
  EXPECT_THROW(interpolate_amplitude(a, a, 1.01), ParameterError);
  EXPECT_THROW(interpolate_amplitude(a, a, std::nan("")), ParameterError);
  EXPECT_THROW(interpolate_amplitude(a, b, 0.5), ShapeError);
}

}  // namespace
}  // namespace spcd
