// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPECTRAL_PCD_IO_POINTCLOUD_HPP
#define SPECTRAL_PCD_IO_POINTCLOUD_HPP

#include <string>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/csv.hpp"
#include "spectral_pcd/io/file.hpp"
#include "spectral_pcd/io/ply.hpp"

namespace spcd::io {

/// Dispatches on extension: .ply or .csv.
inline PointCloud read_pointcloud(const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".ply") return read_ply(path);
  if (ext == ".csv") return read_csv(path);
  throw FormatError(path.string(), "unsupported point cloud extension '" + ext + "'");
}

inline void write_pointcloud(const PointCloud& cloud, const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".ply") return write_ply(cloud, path);
  if (ext == ".csv") return write_csv(cloud, path);
  throw FormatError(path.string(), "unsupported point cloud extension '" + ext + "'");
}

}  // namespace spcd::io

#endif  // SPECTRAL_PCD_IO_POINTCLOUD_HPP
