// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form style transfer: the stylized spectrum takes the content phase
// and a convex blend of content and style amplitudes, then is reconstructed.
// A style can come from another point cloud or from an RGB image, which is
// resized to the content grid's W x H and repeated D times along z.

#ifndef SPECTRAL_PCD_STYLE_HPP
#define SPECTRAL_PCD_STYLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/spectral.hpp"
#include "spectral_pcd/transform.hpp"

namespace spcd {

/// Row-major RGB image, three doubles per pixel in [0, 1]. Row 0 maps to y = 0.
class StyleImage {
 public:
  StyleImage() = default;

  StyleImage(std::size_t width, std::size_t height, std::vector<double> rgb)
      : width_(width), height_(height), rgb_(std::move(rgb)) {
    if (width_ == 0 || height_ == 0) throw InputError("image dimensions must be positive");
    if (rgb_.size() != width_ * height_ * 3) {
      throw InputError("image holds " + std::to_string(rgb_.size()) + " values, expected " +
                       std::to_string(width_ * height_ * 3));
    }
    for (double v : rgb_) {
      if (!(v >= 0.0 && v <= 1.0)) throw InputError("image pixel value outside [0, 1]");
    }
  }

  static StyleImage uniform(std::size_t width, std::size_t height, double r, double g, double b) {
    std::vector<double> rgb(width * height * 3);
    for (std::size_t i = 0; i < width * height; ++i) {
      rgb[3 * i] = r;
      rgb[3 * i + 1] = g;
      rgb[3 * i + 2] = b;
    }
    return StyleImage(width, height, std::move(rgb));
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const double> data() const noexcept { return rgb_; }

  double at(std::size_t x, std::size_t y, std::size_t channel) const {
    return rgb_[(y * width_ + x) * 3 + channel];
  }

  friend bool operator==(const StyleImage&, const StyleImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> rgb_;
};

/// Bilinear resampling with pixel-center alignment and edge clamping. Sizes
/// equal to the source return an identical image.
inline StyleImage resize_bilinear(const StyleImage& img, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw InputError("target image dimensions must be positive");
  if (width == img.width() && height == img.height()) return img;

  const auto sample_axis = [](std::size_t dst, std::size_t dst_len, std::size_t src_len) {
    const double scale = static_cast<double>(src_len) / static_cast<double>(dst_len);
    double s = (static_cast<double>(dst) + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
    const auto i0 = static_cast<std::size_t>(std::floor(s));
    const std::size_t i1 = std::min(i0 + 1, src_len - 1);
    return std::tuple{i0, i1, s - static_cast<double>(i0)};
  };

  std::vector<double> rgb(width * height * 3);
  for (std::size_t y = 0; y < height; ++y) {
    const auto [y0, y1, fy] = sample_axis(y, height, img.height());
    for (std::size_t x = 0; x < width; ++x) {
      const auto [x0, x1, fx] = sample_axis(x, width, img.width());
      for (std::size_t c = 0; c < 3; ++c) {
        const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
        const double bottom = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
        rgb[(y * width + x) * 3 + c] = std::clamp((1.0 - fy) * top + fy * bottom, 0.0, 1.0);
      }
    }
  }
  return StyleImage(width, height, std::move(rgb));
}

/// The image resized to W x H, stacked D times along z, with pi = 1 everywhere.
inline VoxelGrid image_style_grid(const StyleImage& img, const GridGeometry& geom) {
  const StyleImage resized = resize_bilinear(img, geom.dims.w, geom.dims.h);
  VoxelGrid grid(geom);
  for (std::size_t z = 0; z < geom.dims.d; ++z) {
    for (std::size_t y = 0; y < geom.dims.h; ++y) {
      for (std::size_t x = 0; x < geom.dims.w; ++x) {
        const std::size_t idx = geom.dims.index(x, y, z);
        for (std::size_t c = 0; c < 3; ++c) grid.values[c][idx] = resized.at(x, y, c);
        grid.values[3][idx] = 1.0;
      }
    }
  }
  return grid;
}

inline ChannelArray<double> image_to_style_amplitude(const StyleImage& img,
                                                     const GridGeometry& geom) {
  return to_amplitude_phase(forward_dft(image_style_grid(img, geom))).amplitude;
}

/// Content phase with amplitude (1 - gamma) * content + gamma * style. In
/// kRgbOnly mode the pi amplitude stays the content's.
inline AmplitudePhase stylize_spectrum(const AmplitudePhase& content,
                                       const ChannelArray<double>& style_amplitude, double gamma,
                                       ChannelMode mode) {
  ChannelArray<double> blended = interpolate_amplitude(content.amplitude, style_amplitude, gamma);
  if (mode == ChannelMode::kRgbOnly) blended[3] = content.amplitude[3];
  return AmplitudePhase{content.geometry, std::move(blended), content.phase};
}

/// Both clouds are voxelized over their union bounding box with the voxel
/// size chosen by `policy`.
inline PointCloud stylize(const PointCloud& content, const PointCloud& style, double gamma,
                          const ReconstructionParams& params, const VoxelSizePolicy& policy) {
  check_gamma(gamma);
  const auto [content_ap, style_ap] = decompose_pair(content, style, policy);
  return reconstruct(stylize_spectrum(content_ap, style_ap.amplitude, gamma, params.channel_mode),
                     params);
}

/// The content keeps its own grid; the image is fitted to it.
inline PointCloud stylize_from_image(const PointCloud& content, const StyleImage& img,
                                     double gamma, const ReconstructionParams& params,
                                     const VoxelSizePolicy& policy) {
  check_gamma(gamma);
  const GridGeometry geom = policy.geometry_for(bounds_of(content));
  const AmplitudePhase content_ap = decompose_on(content, geom);
  return reconstruct(
      stylize_spectrum(content_ap, image_to_style_amplitude(img, geom), gamma, params.channel_mode),
      params);
}

}  // namespace spcd

#endif  // SPECTRAL_PCD_STYLE_HPP
