// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Amplitude-replacement data augmentation. Each cloud keeps its phase and
// receives the amplitude of a donor cloud chosen by a seeded derangement.

#ifndef SPECTRAL_PCD_AUGMENT_HPP
#define SPECTRAL_PCD_AUGMENT_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/parallel.hpp"
#include "spectral_pcd/spectral.hpp"

namespace spcd {

struct AugmentConfig {
  std::uint64_t seed = 0;
  ChannelMode mode = ChannelMode::kAll;
  double pi_threshold = kDefaultPiThreshold;
  VoxelSizePolicy voxel = VoxelSizePolicy::grid_max(kDefaultGridMax);
  /// Only draw donors that share the target's label.
  bool same_class = false;
};

/// Uniform integer in [0, n) from the raw 64-bit engine output. Avoids
/// std::uniform_int_distribution, whose output differs between standard
/// libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// splitmix64 finalizer; decorrelates seeds derived from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Uniformly random permutation of [0, n) without fixed points, by rejection
/// of Fisher-Yates shuffles. n = 1 yields {0}.
inline std::vector<std::size_t> random_derangement(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  if (n < 2) {
    std::iota(perm.begin(), perm.end(), 0);
    return perm;
  }
  for (;;) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
    }
    bool fixed = false;
    for (std::size_t i = 0; i < n && !fixed; ++i) fixed = perm[i] == i;
    if (!fixed) return perm;
  }
}

/// donors[i] is the cloud whose amplitude cloud i receives. With labels and
/// `same_class`, donors are drawn within each label group; a label with a
/// single member donates to itself.
inline std::vector<std::size_t> assign_donors(std::size_t n, std::uint64_t seed,
                                              std::span<const std::string> labels = {},
                                              bool same_class = false) {
  if (n < 2) throw InputError("augmentation needs at least 2 clouds, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  if (!same_class) return random_derangement(n, rng);
  if (labels.size() != n) {
    throw InputError("same-class augmentation needs one label per cloud");
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
  std::vector<std::size_t> donors(n);
  for (const auto& [label, members] : groups) {
    const auto perm = random_derangement(members.size(), rng);
    for (std::size_t j = 0; j < members.size(); ++j) donors[members[j]] = members[perm[j]];
  }
  return donors;
}

/// Target phase with the donor's amplitude (per cfg.mode), reconstructed over
/// the pair's shared grid. Throws EmptyReconstructionError when no voxel
/// survives; callers treat that as a skip.
inline PointCloud augment_pair(const PointCloud& target, const PointCloud& donor,
                               const AugmentConfig& cfg, std::size_t threads = thread_limit()) {
  const auto [target_ap, donor_ap] = decompose_pair(target, donor, cfg.voxel, threads);
  const auto swapped = amplitude_swap(target_ap, donor_ap, cfg.mode).first;
  return reconstruct(swapped, {cfg.pi_threshold, cfg.mode}, threads);
}

struct AugmentedDataset {
  std::vector<PointCloud> clouds;
  std::vector<std::size_t> donors;
  /// Indices whose reconstruction came back empty; those entries hold the
  /// unaugmented input cloud.
  std::vector<std::size_t> skipped;
};

inline AugmentedDataset augment_dataset(std::span<const PointCloud> clouds,
                                        const AugmentConfig& cfg,
                                        std::span<const std::string> labels = {},
                                        std::size_t threads = thread_limit()) {
  AugmentedDataset out;
  out.donors = assign_donors(clouds.size(), cfg.seed, labels, cfg.same_class);
  out.clouds.resize(clouds.size());
  std::vector<char> skipped(clouds.size(), 0);
  parallel_for(clouds.size(), threads, [&](std::size_t i) {
    try {
      // Inner transforms stay sequential; the pairs already fill the workers.
      out.clouds[i] = augment_pair(clouds[i], clouds[out.donors[i]], cfg, 1);
    } catch (const EmptyReconstructionError&) {
      out.clouds[i] = clouds[i];
      skipped[i] = 1;
    }
  });
  for (std::size_t i = 0; i < skipped.size(); ++i) {
    if (skipped[i]) out.skipped.push_back(i);
  }
  return out;
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_AUGMENT_HPP
