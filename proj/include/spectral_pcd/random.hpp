// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reproducible random clouds and grids for self-checks and tests. Only the
// raw mt19937_64 stream is used, so outputs match across standard libraries.

#ifndef SPECTRAL_PCD_RANDOM_HPP
#define SPECTRAL_PCD_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "spectral_pcd/augment.hpp"
#include "spectral_pcd/core.hpp"

namespace spcd {

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// `n` points uniform in [-1, 1]^3 with uniform colors.
inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> pts(n);
  for (Point& p : pts) {
    p = {uniform_in(rng, -1, 1), uniform_in(rng, -1, 1), uniform_in(rng, -1, 1),
         uniform01(rng), uniform01(rng), uniform01(rng)};
  }
  return PointCloud(std::move(pts));
}

/// `n` points at distinct voxel centers of `geom`, so voxelization has no
/// collisions. Requires n <= geom.voxels().
inline PointCloud random_cloud_on_grid(std::mt19937_64& rng, const GridGeometry& geom,
                                       std::size_t n) {
  std::vector<std::size_t> cells(geom.voxels());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(cells[i], cells[i + uniform_below(rng, cells.size() - i)]);
  }
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx = cells[i];
    const std::size_t x = idx % geom.dims.w;
    const std::size_t y = (idx / geom.dims.w) % geom.dims.h;
    const std::size_t z = idx / (geom.dims.w * geom.dims.h);
    const auto c = geom.center(x, y, z);
    pts.push_back({c[0], c[1], c[2], uniform01(rng), uniform01(rng), uniform01(rng)});
  }
  return PointCloud(std::move(pts));
}

/// Four channels of uniform values in [-1, 1).
inline VoxelGrid random_grid(std::mt19937_64& rng, const Dims& dims) {
  GridGeometry g;
  g.dims = dims;
  g.bounds.hi = {static_cast<double>(dims.w), static_cast<double>(dims.h),
                 static_cast<double>(dims.d)};
  VoxelGrid grid(g);
  for (auto& ch : grid.values) {
    for (double& v : ch) v = uniform_in(rng, -1, 1);
  }
  return grid;
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_RANDOM_HPP
