// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Binary amplitude/phase container. All fields little-endian:
//
//   offset  size  field
//        0     4  magic "SPCF"
//        4     1  version (1)
//        5    48  bounds: x_min, y_min, z_min, x_max, y_max, z_max (f64)
//       53     8  voxel size v (f64)
//       61    12  W, H, D (u32)
//       73     1  normalization tag (0 = unnormalized forward, 1/(WHD) inverse)
//       74     -  amplitude then phase; each channel-major (R, G, B, pi),
//                 x fastest, f64
//
// Payload length is exactly 2 * 4 * W * H * D * 8 bytes.

#ifndef SPECTRAL_PCD_IO_SPECTRUM_FILE_HPP
#define SPECTRAL_PCD_IO_SPECTRUM_FILE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/file.hpp"
#include "spectral_pcd/transform.hpp"

namespace spcd::io {

inline constexpr std::string_view kSpectrumMagic = "SPCF";
inline constexpr std::uint8_t kSpectrumVersion = 1;
inline constexpr std::size_t kSpectrumHeaderSize = 74;

inline std::string format_spectrum(const AmplitudePhase& ap) {
  const GridGeometry& g = ap.geometry;
  detail::check_shape(g, ap.amplitude, "amplitude");
  detail::check_shape(g, ap.phase, "phase");
  std::string out;
  out.reserve(kSpectrumHeaderSize + 2 * kNumChannels * g.voxels() * 8);
  out.append(kSpectrumMagic);
  out.push_back(static_cast<char>(kSpectrumVersion));
  for (double b : g.bounds.lo) put_le(out, b);
  for (double b : g.bounds.hi) put_le(out, b);
  put_le(out, g.voxel_size);
  put_le(out, static_cast<std::uint32_t>(g.dims.w));
  put_le(out, static_cast<std::uint32_t>(g.dims.h));
  put_le(out, static_cast<std::uint32_t>(g.dims.d));
  out.push_back(static_cast<char>(kNormalization));
  for (const auto& ch : ap.amplitude) {
    for (double v : ch) put_le(out, v);
  }
  for (const auto& ch : ap.phase) {
    for (double v : ch) put_le(out, v);
  }
  return out;
}

inline AmplitudePhase parse_spectrum(const std::string& path, std::string_view bytes) {
  if (bytes.size() < kSpectrumMagic.size() || bytes.substr(0, 4) != kSpectrumMagic) {
    throw FormatError(path, "not a spectrum file (bad magic)", FileLocation::offset(0));
  }
  if (bytes.size() < kSpectrumHeaderSize) {
    throw TruncationError(path, kSpectrumHeaderSize, bytes.size());
  }
  const auto version = static_cast<std::uint8_t>(bytes[4]);
  if (version != kSpectrumVersion) {
    throw FormatError(path, "unsupported spectrum file version " + std::to_string(version),
                      FileLocation::offset(4));
  }
  Bounds bounds;
  for (std::size_t a = 0; a < 3; ++a) bounds.lo[a] = get_le<double>(bytes, 5 + 8 * a);
  for (std::size_t a = 0; a < 3; ++a) bounds.hi[a] = get_le<double>(bytes, 29 + 8 * a);
  const double v = get_le<double>(bytes, 53);
  const Dims dims{get_le<std::uint32_t>(bytes, 61), get_le<std::uint32_t>(bytes, 65),
                  get_le<std::uint32_t>(bytes, 69)};
  const auto tag = static_cast<std::uint8_t>(bytes[73]);
  if (tag != static_cast<std::uint8_t>(kNormalization)) {
    throw ConventionMismatchError(path,
                                  "normalization tag " + std::to_string(tag) +
                                      " does not match this build's convention " +
                                      std::to_string(static_cast<int>(kNormalization)),
                                  FileLocation::offset(73));
  }

  for (std::size_t a = 0; a < 3; ++a) {
    if (!std::isfinite(bounds.lo[a]) || !std::isfinite(bounds.hi[a]) || bounds.hi[a] < bounds.lo[a]) {
      throw FormatError(path, "invalid grid bounds", FileLocation::offset(5));
    }
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw FormatError(path, "invalid voxel size", FileLocation::offset(53));
  }
  if (dims.w == 0 || dims.h == 0 || dims.d == 0) {
    throw FormatError(path, "zero grid dimension", FileLocation::offset(61));
  }
  const GridGeometry geom = make_geometry(bounds, v);
  if (geom.dims != dims) {
    throw FormatError(path,
                      "declared grid " + to_string(dims) + " inconsistent with bounds and voxel size (" +
                          to_string(geom.dims) + ")",
                      FileLocation::offset(61));
  }

  const std::size_t expected = kSpectrumHeaderSize + 2 * kNumChannels * dims.voxels() * 8;
  if (bytes.size() < expected) throw TruncationError(path, expected, bytes.size());
  if (bytes.size() > expected) {
    throw FormatError(path, std::to_string(bytes.size() - expected) + " trailing bytes after payload",
                      FileLocation::offset(expected));
  }

  AmplitudePhase ap{geom, make_channels<double>(dims.voxels()), make_channels<double>(dims.voxels())};
  std::size_t offset = kSpectrumHeaderSize;
  for (auto& ch : ap.amplitude) {
    for (double& value : ch) {
      value = get_le<double>(bytes, offset);
      if (!(value >= 0.0) || !std::isfinite(value)) {
        throw FormatError(path, "amplitude must be finite and non-negative", FileLocation::offset(offset));
      }
      offset += 8;
    }
  }
  for (auto& ch : ap.phase) {
    for (double& value : ch) {
      value = get_le<double>(bytes, offset);
      if (!std::isfinite(value)) throw FormatError(path, "non-finite phase", FileLocation::offset(offset));
      offset += 8;
    }
  }
  return ap;
}

inline void write_spectrum(const AmplitudePhase& ap, const fs::path& path) {
  write_file_atomic(path, format_spectrum(ap));
}

inline AmplitudePhase read_spectrum(const fs::path& path) {
  return parse_spectrum(path.string(), read_file(path));
}

}  // namespace spcd::io

#endif  // SPECTRAL_PCD_IO_SPECTRUM_FILE_HPP
