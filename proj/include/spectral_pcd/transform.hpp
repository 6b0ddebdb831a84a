// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// 3D DFT of the four-channel voxel grid.
//
//   forward:  F(k,l,m) = sum_{x,y,z} f(x,y,z) exp(-2 pi i (kx/W + ly/H + mz/D))
//   inverse:  f(x,y,z) = 1/(WHD) sum_{k,l,m} F(k,l,m) exp(+2 pi i (...))
//
// The fast path runs separable 1D FFTs along x, then y, then z. The direct
// triple-sum evaluators below are the reference the fast path is checked
// against; they share no code with it.

#ifndef SPECTRAL_PCD_TRANSFORM_HPP
#define SPECTRAL_PCD_TRANSFORM_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/fft.hpp"
#include "spectral_pcd/parallel.hpp"

namespace spcd {

using Complex = std::complex<double>;

/// Tag written into spectrum files; 0 = unnormalized forward, 1/(WHD) inverse.
enum class Normalization : std::uint8_t { kUnnormalizedForward = 0 };

inline constexpr Normalization kNormalization = Normalization::kUnnormalizedForward;

struct Spectrum {
  GridGeometry geometry;
  ChannelArray<Complex> coeffs;

  std::span<const Complex> channel(Channel c) const { return coeffs[channel_index(c)]; }
};

struct AmplitudePhase {
  GridGeometry geometry;
  ChannelArray<double> amplitude;
  ChannelArray<double> phase;

  friend bool operator==(const AmplitudePhase&, const AmplitudePhase&) = default;
};

namespace detail {

template <class T>
void check_shape(const GridGeometry& g, const ChannelArray<T>& data, const char* what) {
  for (const auto& ch : data) {
    if (ch.size() != g.voxels()) {
      throw ShapeError(std::string(what) + " channel holds " + std::to_string(ch.size()) +
                       " values, grid " + to_string(g.dims) + " needs " +
                       std::to_string(g.voxels()));
    }
  }
}

/// In-place 3D FFT of one channel stored x-fastest.
inline void fft3d_channel(std::span<Complex> data, const Dims& dims, fft::Direction dir) {
  const std::array<std::size_t, 3> len{dims.w, dims.h, dims.d};
  const std::array<std::size_t, 3> stride{1, dims.w, dims.w * dims.h};
  std::vector<Complex> line;
  fft::FftWorkspace<double> ws;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const std::size_t n = len[axis];
    if (n == 1) continue;
    const fft::FftPlan<double> plan(n);
    line.resize(n);
    const std::size_t s = stride[axis];
    // Lines along `axis` start at every index whose `axis` coordinate is 0.
    const std::size_t block = s * n;
    for (std::size_t outer = 0; outer < data.size(); outer += block) {
      for (std::size_t inner = 0; inner < s; ++inner) {
        Complex* base = data.data() + outer + inner;
        for (std::size_t j = 0; j < n; ++j) line[j] = base[j * s];
        plan.execute(line, dir, ws);
        for (std::size_t j = 0; j < n; ++j) base[j * s] = line[j];
      }
    }
  }
}

}  // namespace detail

/// Unnormalized forward 3D FFT of each channel. Channels are transformed
/// concurrently up to `threads`; the result does not depend on it.
inline Spectrum forward_dft(const VoxelGrid& grid, std::size_t threads = thread_limit()) {
  detail::check_shape(grid.geometry, grid.values, "voxel grid");
  Spectrum out{grid.geometry, {}};
  parallel_for(kNumChannels, threads, [&](std::size_t c) {
    const auto& src = grid.values[c];
    out.coeffs[c].assign(src.begin(), src.end());
    detail::fft3d_channel(out.coeffs[c], grid.geometry.dims, fft::Direction::kForward);
  });
  return out;
}

/// Inverse 3D FFT scaled by 1/(WHD) in complex form.
inline ChannelArray<Complex> inverse_dft_complex(const Spectrum& spec,
                                                 std::size_t threads = thread_limit()) {
  detail::check_shape(spec.geometry, spec.coeffs, "spectrum");
  ChannelArray<Complex> out = spec.coeffs;
  const double scale = 1.0 / static_cast<double>(spec.geometry.voxels());
  parallel_for(kNumChannels, threads, [&](std::size_t c) {
    detail::fft3d_channel(out[c], spec.geometry.dims, fft::Direction::kInverse);
    for (Complex& z : out[c]) z *= scale;
  });
  return out;
}

/// Inverse transform keeping only the real part. The pi channel is
/// continuous-valued here.
inline VoxelGrid inverse_dft(const Spectrum& spec, std::size_t threads = thread_limit()) {
  const auto complex_values = inverse_dft_complex(spec, threads);
  VoxelGrid out(spec.geometry);
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    for (std::size_t i = 0; i < complex_values[c].size(); ++i) {
      out.values[c][i] = complex_values[c][i].real();
    }
  }
  return out;
}

/// amplitude = |F|, phase = arg F in (-pi, pi], with arg(0) = 0.
inline AmplitudePhase to_amplitude_phase(const Spectrum& spec) {
  detail::check_shape(spec.geometry, spec.coeffs, "spectrum");
  AmplitudePhase ap{spec.geometry, make_channels<double>(spec.geometry.voxels()),
                    make_channels<double>(spec.geometry.voxels())};
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    for (std::size_t i = 0; i < spec.coeffs[c].size(); ++i) {
      const Complex z = spec.coeffs[c][i];
      ap.amplitude[c][i] = std::abs(z);
      double phase = (z == Complex(0.0, 0.0)) ? 0.0 : std::arg(z);
      // atan2 returns -pi for (-x, -0.0).
      if (phase == -std::numbers::pi) phase = std::numbers::pi;
      ap.phase[c][i] = phase;
    }
  }
  return ap;
}

inline Spectrum from_amplitude_phase(const AmplitudePhase& ap) {
  detail::check_shape(ap.geometry, ap.amplitude, "amplitude");
  detail::check_shape(ap.geometry, ap.phase, "phase");
  Spectrum spec{ap.geometry, make_channels<Complex>(ap.geometry.voxels())};
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    for (std::size_t i = 0; i < ap.amplitude[c].size(); ++i) {
      const double a = ap.amplitude[c][i];
      if (!(a >= 0.0)) {
        throw InputError("amplitude must be non-negative, channel " + std::to_string(c) +
                         " index " + std::to_string(i) + " holds " + std::to_string(a));
      }
      spec.coeffs[c][i] = std::polar(a, ap.phase[c][i]);
    }
  }
  return spec;
}

/// Direct O(N^2) evaluation of the 3D DFT sum for one channel. `sign` is -1
/// for the forward kernel and +1 for the inverse kernel; no scaling applied.
inline std::vector<Complex> direct_dft_channel(std::span<const Complex> in, const Dims& dims,
                                               int sign) {
  std::vector<Complex> out(dims.voxels());
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t m = 0; m < dims.d; ++m) {
    for (std::size_t l = 0; l < dims.h; ++l) {
      for (std::size_t k = 0; k < dims.w; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t z = 0; z < dims.d; ++z) {
          for (std::size_t y = 0; y < dims.h; ++y) {
            for (std::size_t x = 0; x < dims.w; ++x) {
              const double turns =
                  static_cast<double>((k * x) % dims.w) / static_cast<double>(dims.w) +
                  static_cast<double>((l * y) % dims.h) / static_cast<double>(dims.h) +
                  static_cast<double>((m * z) % dims.d) / static_cast<double>(dims.d);
              acc += in[dims.index(x, y, z)] * std::polar(1.0, sign * two_pi * turns);
            }
          }
        }
        out[dims.index(k, l, m)] = acc;
      }
    }
  }
  return out;
}

inline Spectrum direct_forward_dft(const VoxelGrid& grid) {
  detail::check_shape(grid.geometry, grid.values, "voxel grid");
  Spectrum out{grid.geometry, {}};
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    std::vector<Complex> in(grid.values[c].begin(), grid.values[c].end());
    out.coeffs[c] = direct_dft_channel(in, grid.geometry.dims, -1);
  }
  return out;
}

inline ChannelArray<Complex> direct_inverse_dft_complex(const Spectrum& spec) {
  detail::check_shape(spec.geometry, spec.coeffs, "spectrum");
  ChannelArray<Complex> out;
  const double scale = 1.0 / static_cast<double>(spec.geometry.voxels());
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    out[c] = direct_dft_channel(spec.coeffs[c], spec.geometry.dims, +1);
    for (Complex& z : out[c]) z *= scale;
  }
  return out;
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_TRANSFORM_HPP
