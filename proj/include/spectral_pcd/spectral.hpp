// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Amplitude/phase decomposition of colored point clouds and the operations
// built on it: thresholded reconstruction, amplitude and phase exchange
// between two clouds, and amplitude interpolation.

#ifndef SPECTRAL_PCD_SPECTRAL_HPP
#define SPECTRAL_PCD_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/transform.hpp"

namespace spcd {

/// Which channels take part in an amplitude exchange or interpolation.
/// kRgbOnly leaves the pi amplitude with the phase owner, so occupancy is
/// reconstructed exactly.
enum class ChannelMode { kAll, kRgbOnly };

inline constexpr double kDefaultPiThreshold = 0.5;

struct ReconstructionParams {
  double pi_threshold = kDefaultPiThreshold;
  ChannelMode channel_mode = ChannelMode::kAll;
};

inline std::size_t swapped_channel_count(ChannelMode mode) {
  return mode == ChannelMode::kAll ? kNumChannels : 3;
}

/// Amplitude and phase of `cloud` voxelized over `geom`.
inline AmplitudePhase decompose_on(const PointCloud& cloud, const GridGeometry& geom,
                                   std::size_t threads = thread_limit()) {
  return to_amplitude_phase(forward_dft(voxelize(cloud, geom), threads));
}

inline AmplitudePhase decompose(const PointCloud& cloud, double voxel_size) {
  return decompose_on(cloud, compute_geometry(cloud, voxel_size));
}

inline AmplitudePhase decompose(const PointCloud& cloud, const VoxelSizePolicy& policy) {
  return decompose_on(cloud, policy.geometry_for(bounds_of(cloud)));
}

/// Grid over the union bounding box of both clouds, so their spectra can be
/// combined elementwise.
inline GridGeometry shared_geometry(const PointCloud& a, const PointCloud& b,
                                    const VoxelSizePolicy& policy) {
  return policy.geometry_for(union_of(bounds_of(a), bounds_of(b)));
}

inline std::pair<AmplitudePhase, AmplitudePhase> decompose_pair(const PointCloud& a,
                                                                const PointCloud& b,
                                                                const VoxelSizePolicy& policy,
                                                                std::size_t threads = thread_limit()) {
  const GridGeometry geom = shared_geometry(a, b, policy);
  return {decompose_on(a, geom, threads), decompose_on(b, geom, threads)};
}

/// Real voxel data of the inverse transform; pi is continuous and unclamped.
inline VoxelGrid reconstruct_grid(const AmplitudePhase& ap, std::size_t threads = thread_limit()) {
  return inverse_dft(from_amplitude_phase(ap), threads);
}

/// Points at the centers of voxels whose reconstructed pi passes the
/// threshold. A threshold of 0 keeps every voxel.
inline PointCloud reconstruct(const AmplitudePhase& ap, const ReconstructionParams& params = {},
                              std::size_t threads = thread_limit()) {
  if (!(params.pi_threshold >= 0.0)) {
    throw ParameterError("pi threshold must be >= 0, got " + std::to_string(params.pi_threshold));
  }
  return extract_points(reconstruct_grid(ap, threads), params.pi_threshold);
}

inline void require_same_dims(const GridGeometry& a, const GridGeometry& b) {
  if (a.dims != b.dims) {
    throw ShapeError("spectra have different grid shapes: " + to_string(a) + " vs " +
                     to_string(b));
  }
}

/// Returns (A2, P1) and (A1, P2). Under kRgbOnly each output keeps its own pi
/// amplitude. Output i keeps the geometry of its phase donor.
inline std::pair<AmplitudePhase, AmplitudePhase> amplitude_swap(const AmplitudePhase& ap1,
                                                                const AmplitudePhase& ap2,
                                                                ChannelMode mode = ChannelMode::kAll) {
  require_same_dims(ap1.geometry, ap2.geometry);
  std::pair<AmplitudePhase, AmplitudePhase> out{ap1, ap2};
  for (std::size_t c = 0; c < swapped_channel_count(mode); ++c) {
    out.first.amplitude[c] = ap2.amplitude[c];
    out.second.amplitude[c] = ap1.amplitude[c];
  }
  return out;
}

/// Returns (A1, P2) and (A2, P1) across all four channels. Output i keeps the
/// geometry of its amplitude owner.
inline std::pair<AmplitudePhase, AmplitudePhase> phase_swap(const AmplitudePhase& ap1,
                                                            const AmplitudePhase& ap2) {
  require_same_dims(ap1.geometry, ap2.geometry);
  std::pair<AmplitudePhase, AmplitudePhase> out{ap1, ap2};
  out.first.phase = ap2.phase;
  out.second.phase = ap1.phase;
  return out;
}

inline void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ParameterError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
}

/// (1 - gamma) * content + gamma * style, elementwise. gamma = 0 and 1 return
/// the respective input unchanged.
inline ChannelArray<double> interpolate_amplitude(const ChannelArray<double>& content,
                                                  const ChannelArray<double>& style, double gamma) {
  check_gamma(gamma);
  ChannelArray<double> out;
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    if (content[c].size() != style[c].size()) {
      throw ShapeError("amplitude arrays differ in size: " + std::to_string(content[c].size()) +
                       " vs " + std::to_string(style[c].size()));
    }
    if (gamma == 0.0) {
      out[c] = content[c];
      continue;
    }
    if (gamma == 1.0) {
      out[c] = style[c];
      continue;
    }
    out[c].resize(content[c].size());
    for (std::size_t i = 0; i < content[c].size(); ++i) {
      const double a = content[c][i];
      const double b = style[c][i];
      // Rounding can push the blend an ulp outside [min(a,b), max(a,b)].
      out[c][i] = std::clamp((1.0 - gamma) * a + gamma * b, std::min(a, b), std::max(a, b));
    }
  }
  return out;
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_SPECTRAL_HPP
