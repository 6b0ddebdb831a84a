// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dataset layout: <root>/<label>/<name>.{ply,csv}. Labels and files are
// visited in lexicographic order so the resulting sequence is reproducible.

#ifndef SPECTRAL_PCD_IO_DATASET_HPP
#define SPECTRAL_PCD_IO_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/file.hpp"
#include "spectral_pcd/io/pointcloud.hpp"

namespace spcd::io {

struct LabeledCloud {
  std::string label;
  fs::path path;
  PointCloud cloud;
};

struct IngestFailure {
  fs::path path;
  std::string message;
};

struct Dataset {
  std::vector<LabeledCloud> clouds;
  std::vector<IngestFailure> failures;
};

/// Centers on the centroid and scales isotropically so the largest absolute
/// coordinate becomes 1. A single-point cloud is only centered.
inline PointCloud normalize_unit_cube(const PointCloud& cloud) {
  double cx = 0, cy = 0, cz = 0;
  for (const Point& p : cloud) {
    cx += p.x;
    cy += p.y;
    cz += p.z;
  }
  const double n = static_cast<double>(cloud.size());
  cx /= n;
  cy /= n;
  cz /= n;
  double extent = 0.0;
  for (const Point& p : cloud) {
    extent = std::max({extent, std::abs(p.x - cx), std::abs(p.y - cy), std::abs(p.z - cz)});
  }
  const double scale = extent > 0.0 ? 1.0 / extent : 1.0;
  std::vector<Point> out;
  out.reserve(cloud.size());
  for (const Point& p : cloud) {
    out.push_back({(p.x - cx) * scale, (p.y - cy) * scale, (p.z - cz) * scale, p.r, p.g, p.b});
  }
  return PointCloud(std::move(out));
}

inline bool is_pointcloud_path(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".ply" || ext == ".csv";
}

/// Loads and normalizes every readable cloud. Unreadable files are recorded in
/// `failures`; an error is thrown only if nothing loads.
inline Dataset ingest_dataset(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError(root.string(), "dataset directory does not exist");

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());

  Dataset ds;
  for (const fs::path& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && is_pointcloud_path(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      try {
        ds.clouds.push_back({dir.filename().string(), file, normalize_unit_cube(read_pointcloud(file))});
      } catch (const Error& e) {
        ds.failures.push_back({file, e.what()});
      }
    }
  }
  if (ds.clouds.empty()) {
    std::string msg = "no point clouds could be loaded";
    if (!ds.failures.empty()) msg += " (" + std::to_string(ds.failures.size()) + " files failed)";
    throw IoError(root.string(), msg);
  }
  return ds;
}

}  // namespace spcd::io

#endif  // SPECTRAL_PCD_IO_DATASET_HPP
