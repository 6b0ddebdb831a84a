// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Self-check suite behind `spcd verify`: fast transform against the direct
// sum, Parseval, conjugate symmetry, lossless decompose/reconstruct, swap
// involutions and interpolation endpoints.

#ifndef SPECTRAL_PCD_VERIFY_HPP
#define SPECTRAL_PCD_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/random.hpp"
#include "spectral_pcd/spectral.hpp"
#include "spectral_pcd/transform.hpp"

namespace spcd {

enum class VerifySize { kSmall, kFull };

struct VerifyOptions {
  VerifySize size = VerifySize::kSmall;
  /// Added to one coefficient of every fast forward transform. Non-zero only
  /// to demonstrate that the oracle check catches a broken transform.
  double fft_perturbation = 0.0;
  std::uint64_t seed = 20260101;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace verify_detail {

inline double max_abs_diff(const ChannelArray<Complex>& a, const ChannelArray<Complex>& b) {
  double err = 0.0;
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) err = std::max(err, std::abs(a[c][i] - b[c][i]));
  }
  return err;
}

template <class Fn>
CheckResult timed(std::string name, double tolerance, Fn&& body) {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace verify_detail

inline VerifyReport run_verification(const VerifyOptions& opts = {}) {
  using verify_detail::max_abs_diff;
  using verify_detail::timed;
  const bool full = opts.size == VerifySize::kFull;
  std::mt19937_64 rng(opts.seed);

  const auto fast_forward = [&](const VoxelGrid& g) {
    Spectrum s = forward_dft(g);
    if (opts.fft_perturbation != 0.0) s.coeffs[0][0] += opts.fft_perturbation;
    return s;
  };

  VerifyReport report;

  report.checks.push_back(timed("fft_matches_direct_sum", 1e-9, [&](CheckResult& r) {
    std::size_t grids = 0;
    for (std::size_t w = 1; w <= 8; ++w) {
      for (std::size_t h = 1; h <= 8; ++h) {
        for (std::size_t d = 1; d <= 8; ++d) {
          const VoxelGrid g = random_grid(rng, {w, h, d});
          const Spectrum fast = fast_forward(g);
          r.max_error = std::max(r.max_error, max_abs_diff(fast.coeffs, direct_forward_dft(g).coeffs));
          r.max_error = std::max(r.max_error, max_abs_diff(inverse_dft_complex(fast),
                                                           direct_inverse_dft_complex(fast)));
          ++grids;
        }
      }
    }
    if (full) {
      // Lengths that exercise larger radices and the chirp-z path.
      for (std::size_t n : {9u, 16u, 27u, 31u, 37u, 49u, 64u, 67u}) {
        const VoxelGrid g = random_grid(rng, {n, 2, 3});
        const Spectrum fast = fast_forward(g);
        r.max_error = std::max(r.max_error, max_abs_diff(fast.coeffs, direct_forward_dft(g).coeffs));
        ++grids;
      }
    }
    r.passed = r.max_error <= r.tolerance;
    r.detail = std::to_string(grids) + " grids, forward and inverse";
  }));

  report.checks.push_back(timed("parseval", 1e-10, [&](CheckResult& r) {
    const std::size_t count = 50;
    for (std::size_t t = 0; t < count; ++t) {
      const Dims dims{1 + uniform_below(rng, full ? 24 : 12), 1 + uniform_below(rng, full ? 24 : 12),
                      1 + uniform_below(rng, full ? 24 : 12)};
      const VoxelGrid g = random_grid(rng, dims);
      const Spectrum s = fast_forward(g);
      for (std::size_t c = 0; c < kNumChannels; ++c) {
        double spatial = 0.0, spectral = 0.0;
        for (double v : g.values[c]) spatial += v * v;
        for (const Complex& z : s.coeffs[c]) spectral += std::norm(z);
        spectral /= static_cast<double>(dims.voxels());
        r.max_error = std::max(r.max_error, std::abs(spatial - spectral) / spatial);
      }
    }
    r.passed = r.max_error <= r.tolerance;
    r.detail = std::to_string(count) + " grids, relative error per channel";
  }));

  report.checks.push_back(timed("conjugate_symmetry", 1e-9, [&](CheckResult& r) {
    for (std::size_t t = 0; t < 20; ++t) {
      const Dims dims{1 + uniform_below(rng, 9), 1 + uniform_below(rng, 9), 1 + uniform_below(rng, 9)};
      const Spectrum s = fast_forward(random_grid(rng, dims));
      for (std::size_t c = 0; c < kNumChannels; ++c) {
        for (std::size_t m = 0; m < dims.d; ++m) {
          for (std::size_t l = 0; l < dims.h; ++l) {
            for (std::size_t k = 0; k < dims.w; ++k) {
              const Complex a = s.coeffs[c][dims.index(k, l, m)];
              const Complex b = s.coeffs[c][dims.index((dims.w - k) % dims.w, (dims.h - l) % dims.h,
                                                       (dims.d - m) % dims.d)];
              r.max_error = std::max(r.max_error, std::abs(a - std::conj(b)));
            }
          }
        }
      }
    }
    r.passed = r.max_error <= r.tolerance;
    r.detail = "20 random grids";
  }));

  report.checks.push_back(timed("lossless_round_trip", 1e-6, [&](CheckResult& r) {
    const std::size_t clouds = full ? 20 : 5;
    const std::size_t max_points = full ? 2048 : 512;
    const std::size_t grid_max = full ? 64 : 32;
    bool sets_equal = true;
    for (std::size_t t = 0; t < clouds; ++t) {
      const PointCloud cloud = random_cloud(rng, 1 + uniform_below(rng, max_points));
      const GridGeometry geom = VoxelSizePolicy::grid_max(grid_max).geometry_for(bounds_of(cloud));
      const VoxelGrid vox = voxelize(cloud, geom);
      Spectrum s = fast_forward(vox);
      const VoxelGrid back = inverse_dft(from_amplitude_phase(to_amplitude_phase(s)));
      const auto expected = occupied_indices(vox, kDefaultPiThreshold);
      const auto actual = occupied_indices(back, kDefaultPiThreshold);
      if (expected != actual) sets_equal = false;
      for (std::size_t idx : expected) {
        for (std::size_t c = 0; c < 3; ++c) {
          r.max_error = std::max(r.max_error, std::abs(back.values[c][idx] - vox.values[c][idx]));
        }
      }
    }
    r.passed = sets_equal && r.max_error <= r.tolerance;
    r.detail = std::to_string(clouds) + " clouds, occupied sets " + (sets_equal ? "equal" : "DIFFER");
  }));

  report.checks.push_back(timed("swap_involutions", 0.0, [&](CheckResult& r) {
    const GridGeometry geom = make_geometry({{-1, -1, -1}, {1, 1, 1}}, 2.0 / 12.0);
    const auto a = decompose_on(random_cloud_on_grid(rng, geom, 200), geom);
    const auto b = decompose_on(random_cloud_on_grid(rng, geom, 150), geom);
    bool ok = true;
    for (ChannelMode mode : {ChannelMode::kAll, ChannelMode::kRgbOnly}) {
      const auto once = amplitude_swap(a, b, mode);
      const auto twice = amplitude_swap(once.first, once.second, mode);
      ok = ok && twice.first == a && twice.second == b;
      const auto self = amplitude_swap(a, a, mode);
      ok = ok && self.first == a && self.second == a;
    }
    const auto once = phase_swap(a, b);
    const auto twice = phase_swap(once.first, once.second);
    ok = ok && twice.first == a && twice.second == b;
    const auto self = phase_swap(a, a);
    ok = ok && self.first == a && self.second == a;
    r.passed = ok;
    r.detail = "bit-exact";
  }));

  report.checks.push_back(timed("interpolation_endpoints", 0.0, [&](CheckResult& r) {
    const GridGeometry geom = make_geometry({{-1, -1, -1}, {1, 1, 1}}, 0.25);
    const auto a = decompose_on(random_cloud_on_grid(rng, geom, 100), geom);
    const auto b = decompose_on(random_cloud_on_grid(rng, geom, 100), geom);
    r.passed = interpolate_amplitude(a.amplitude, b.amplitude, 0.0) == a.amplitude &&
               interpolate_amplitude(a.amplitude, b.amplitude, 1.0) == b.amplitude;
    r.detail = "gamma in {0, 1}, bit-exact";
  }));

  return report;
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_VERIFY_HPP
