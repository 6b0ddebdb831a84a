// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Colored point clouds, voxel grid geometry, and the mapping between the two.
//
// A VoxelGrid stores four planar channels (R, G, B, pi) of W*H*D doubles each.
// Linear voxel index is x + W * (y + H * z), i.e. x varies fastest.

#ifndef SPECTRAL_PCD_CORE_HPP
#define SPECTRAL_PCD_CORE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectral_pcd/errors.hpp"

namespace spcd {

inline constexpr std::size_t kNumChannels = 4;

enum class Channel : std::size_t { kRed = 0, kGreen = 1, kBlue = 2, kPi = 3 };

constexpr std::size_t channel_index(Channel c) { return static_cast<std::size_t>(c); }

/// Planar per-channel storage, channel order (R, G, B, pi).
template <class T>
using ChannelArray = std::array<std::vector<T>, kNumChannels>;

template <class T>
ChannelArray<T> make_channels(std::size_t voxels, T fill = T{}) {
  ChannelArray<T> out;
  for (auto& ch : out) ch.assign(voxels, fill);
  return out;
}

struct Point {
  double x = 0, y = 0, z = 0;
  double r = 0, g = 0, b = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Non-empty ordered sequence of points with finite coordinates and colors in
/// [0, 1]. Validated on construction.
class PointCloud {
 public:
  PointCloud() = default;

  explicit PointCloud(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw InputError("point cloud is empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Point& p = points_[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw InputError("point " + std::to_string(i) + " has a non-finite coordinate");
      }
      for (double c : {p.r, p.g, p.b}) {
        if (!(c >= 0.0 && c <= 1.0)) {
          throw InputError("point " + std::to_string(i) + " has a color outside [0, 1]");
        }
      }
    }
  }

  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Point> points_;
};

struct Dims {
  std::size_t w = 1, h = 1, d = 1;

  constexpr std::size_t voxels() const noexcept { return w * h * d; }
  constexpr std::size_t index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
    return x + w * (y + h * z);
  }
  constexpr std::size_t operator[](std::size_t axis) const noexcept {
    return axis == 0 ? w : (axis == 1 ? h : d);
  }

  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

inline std::string to_string(const Dims& d) {
  return std::to_string(d.w) + "x" + std::to_string(d.h) + "x" + std::to_string(d.d);
}

struct Bounds {
  std::array<double, 3> lo{0, 0, 0};
  std::array<double, 3> hi{0, 0, 0};

  double extent(std::size_t axis) const noexcept { return hi[axis] - lo[axis]; }
  double max_extent() const noexcept {
    return std::max({extent(0), extent(1), extent(2)});
  }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

inline Bounds bounds_of(const PointCloud& cloud) {
  if (cloud.empty()) throw InputError("point cloud is empty");
  Bounds b;
  const Point& first = cloud[0];
  b.lo = b.hi = {first.x, first.y, first.z};
  for (const Point& p : cloud) {
    const std::array<double, 3> c{p.x, p.y, p.z};
    for (std::size_t a = 0; a < 3; ++a) {
      b.lo[a] = std::min(b.lo[a], c[a]);
      b.hi[a] = std::max(b.hi[a], c[a]);
    }
  }
  return b;
}

inline Bounds union_of(const Bounds& a, const Bounds& b) {
  Bounds u;
  for (std::size_t i = 0; i < 3; ++i) {
    u.lo[i] = std::min(a.lo[i], b.lo[i]);
    u.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return u;
}

/// Number of voxels along one axis: max(1, ceil(extent / v)).
inline std::size_t axis_cells(double extent, double v) {
  const double cells = std::ceil(extent / v);
  if (!(cells >= 1.0)) return 1;
  if (cells > static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
    throw ParameterError("voxel size " + std::to_string(v) + " yields a grid axis of " +
                         std::to_string(cells) + " cells");
  }
  return static_cast<std::size_t>(cells);
}

struct GridGeometry {
  Bounds bounds;
  double voxel_size = 1.0;
  Dims dims;

  std::size_t voxels() const noexcept { return dims.voxels(); }

  /// Center of voxel (i, j, k).
  std::array<double, 3> center(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return {bounds.lo[0] + (static_cast<double>(i) + 0.5) * voxel_size,
            bounds.lo[1] + (static_cast<double>(j) + 0.5) * voxel_size,
            bounds.lo[2] + (static_cast<double>(k) + 0.5) * voxel_size};
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

inline std::string to_string(const GridGeometry& g) {
  return to_string(g.dims) + " (v=" + std::to_string(g.voxel_size) + ")";
}

/// Geometry over explicit bounds. Throws ParameterError for v <= 0 and
/// InputError for inverted bounds.
inline GridGeometry make_geometry(const Bounds& bounds, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError("voxel size must be positive and finite, got " + std::to_string(v));
  }
  for (std::size_t a = 0; a < 3; ++a) {
    if (!(bounds.hi[a] >= bounds.lo[a])) throw InputError("grid bounds are inverted");
  }
  GridGeometry g;
  g.bounds = bounds;
  g.voxel_size = v;
  g.dims = {axis_cells(bounds.extent(0), v), axis_cells(bounds.extent(1), v),
            axis_cells(bounds.extent(2), v)};
  return g;
}

inline GridGeometry compute_geometry(const PointCloud& cloud, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError("voxel size must be positive and finite, got " + std::to_string(v));
  }
  return make_geometry(bounds_of(cloud), v);
}

/// How the voxel edge length is chosen: either a fixed value, or the
/// largest v for which the longest axis gets at most `grid_max` cells.
class VoxelSizePolicy {
 public:
  static VoxelSizePolicy fixed(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError("voxel size must be positive and finite, got " + std::to_string(v));
    }
    return VoxelSizePolicy(v, 0);
  }
  static VoxelSizePolicy grid_max(std::size_t cells) {
    if (cells == 0) throw ParameterError("grid-max must be at least 1");
    return VoxelSizePolicy(0.0, cells);
  }

  bool is_fixed() const noexcept { return grid_max_ == 0; }
  double voxel_size() const noexcept { return voxel_size_; }
  std::size_t grid_max_cells() const noexcept { return grid_max_; }

  double resolve(const Bounds& bounds) const {
    if (is_fixed()) return voxel_size_;
    const double extent = bounds.max_extent();
    if (!(extent > 0.0)) return 1.0;
    double v = extent / static_cast<double>(grid_max_);
    // extent / (extent / n) can round above n.
    while (axis_cells(extent, v) > grid_max_) v = std::nextafter(v, extent * 2.0);
    return v;
  }

  GridGeometry geometry_for(const Bounds& bounds) const {
    return make_geometry(bounds, resolve(bounds));
  }

 private:
  VoxelSizePolicy(double v, std::size_t cells) : voxel_size_(v), grid_max_(cells) {}

  double voxel_size_;
  std::size_t grid_max_;
};

inline constexpr std::size_t kDefaultGridMax = 64;

struct VoxelGrid {
  GridGeometry geometry;
  ChannelArray<double> values;

  VoxelGrid() = default;
  explicit VoxelGrid(const GridGeometry& g)
      : geometry(g), values(make_channels<double>(g.voxels())) {}
  VoxelGrid(const GridGeometry& g, ChannelArray<double> v) : geometry(g), values(std::move(v)) {
    for (const auto& ch : values) {
      if (ch.size() != g.voxels()) {
        throw ShapeError("channel size " + std::to_string(ch.size()) + " does not match grid " +
                         to_string(g.dims));
      }
    }
  }

  std::span<double> channel(Channel c) { return values[channel_index(c)]; }
  std::span<const double> channel(Channel c) const { return values[channel_index(c)]; }

  friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;
};

/// Voxel index along one axis, clamped so points on the upper bound land in
/// the last cell.
inline std::size_t cell_of(double coord, double lo, double v, std::size_t cells) {
  const double f = std::floor((coord - lo) / v);
  if (f <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(f), cells - 1);
}

struct VoxelizeResult {
  VoxelGrid grid;
  std::size_t occupied = 0;
  /// Points that landed in an already occupied voxel; their colors are
  /// averaged with the others in that voxel.
  std::size_t collisions = 0;
};

inline VoxelizeResult voxelize_counted(const PointCloud& cloud, const GridGeometry& geom) {
  if (cloud.empty()) throw InputError("point cloud is empty");
  VoxelizeResult out{VoxelGrid(geom), 0, 0};
  std::vector<std::uint32_t> hits(geom.voxels(), 0);
  auto& r = out.grid.values[0];
  auto& g = out.grid.values[1];
  auto& b = out.grid.values[2];
  auto& pi = out.grid.values[3];

  for (std::size_t n = 0; n < cloud.size(); ++n) {
    const Point& p = cloud[n];
    const std::array<double, 3> c{p.x, p.y, p.z};
    std::array<std::size_t, 3> cell{};
    for (std::size_t a = 0; a < 3; ++a) {
      if (c[a] < geom.bounds.lo[a] || c[a] > geom.bounds.hi[a]) {
        throw InputError("point " + std::to_string(n) + " lies outside the grid bounds");
      }
      cell[a] = cell_of(c[a], geom.bounds.lo[a], geom.voxel_size, geom.dims[a]);
    }
    const std::size_t idx = geom.dims.index(cell[0], cell[1], cell[2]);
    r[idx] += p.r;
    g[idx] += p.g;
    b[idx] += p.b;
    pi[idx] = 1.0;
    ++hits[idx];
  }

  for (std::size_t idx = 0; idx < hits.size(); ++idx) {
    if (hits[idx] == 0) continue;
    ++out.occupied;
    if (hits[idx] > 1) {
      out.collisions += hits[idx] - 1;
      const double inv = 1.0 / static_cast<double>(hits[idx]);
      r[idx] *= inv;
      g[idx] *= inv;
      b[idx] *= inv;
    }
  }
  return out;
}

inline VoxelGrid voxelize(const PointCloud& cloud, const GridGeometry& geom) {
  return voxelize_counted(cloud, geom).grid;
}

/// Whether a voxel with occupancy `pi` survives `threshold`. A threshold of 0
/// disables noise removal and keeps every voxel.
inline bool passes_threshold(double pi, double threshold) noexcept {
  return threshold <= 0.0 || pi > threshold;
}

/// One point per voxel whose pi passes `threshold`, placed at the voxel center
/// with RGB clamped to [0, 1]. Points are emitted in linear voxel order.
inline PointCloud extract_points(const VoxelGrid& grid, double threshold) {
  if (!(threshold >= 0.0)) {
    throw ParameterError("pi threshold must be >= 0, got " + std::to_string(threshold));
  }
  const GridGeometry& geom = grid.geometry;
  const auto& pi = grid.values[3];
  std::vector<Point> points;
  double max_pi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < geom.dims.d; ++k) {
    for (std::size_t j = 0; j < geom.dims.h; ++j) {
      for (std::size_t i = 0; i < geom.dims.w; ++i) {
        const std::size_t idx = geom.dims.index(i, j, k);
        max_pi = std::max(max_pi, pi[idx]);
        if (!passes_threshold(pi[idx], threshold)) continue;
        const auto c = geom.center(i, j, k);
        points.push_back({c[0], c[1], c[2], std::clamp(grid.values[0][idx], 0.0, 1.0),
                          std::clamp(grid.values[1][idx], 0.0, 1.0),
                          std::clamp(grid.values[2][idx], 0.0, 1.0)});
      }
    }
  }
  if (points.empty()) throw EmptyReconstructionError(0, max_pi, threshold);
  return PointCloud(std::move(points));
}

/// Points for every occupied voxel of a binary grid.
inline PointCloud devoxelize(const VoxelGrid& grid) { return extract_points(grid, 0.5); }

/// Sorted linear indices of voxels whose pi passes `threshold`.
inline std::vector<std::size_t> occupied_indices(const VoxelGrid& grid, double threshold = 0.5) {
  std::vector<std::size_t> out;
  const auto& pi = grid.values[3];
  for (std::size_t idx = 0; idx < pi.size(); ++idx) {
    if (passes_threshold(pi[idx], threshold)) out.push_back(idx);
  }
  return out;
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_CORE_HPP
