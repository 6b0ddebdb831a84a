// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Style image input: binary PPM (P6) and 8-bit PNG. Grayscale PNGs are
// replicated to RGB and alpha is dropped. The format is detected from the
// file signature, not the extension.

#ifndef SPECTRAL_PCD_IO_IMAGE_HPP
#define SPECTRAL_PCD_IO_IMAGE_HPP

#include <png.h>

#include <cctype>
#include <cstddef>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/file.hpp"
#include "spectral_pcd/io/ply.hpp"
#include "spectral_pcd/style.hpp"

namespace spcd::io {

inline StyleImage parse_ppm(const std::string& path, std::string_view bytes) {
  std::size_t pos = 2;  // past "P6"
  auto next_token = [&]() -> std::size_t {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    std::size_t value = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
      if (value > (1u << 24)) throw FormatError(path, "PPM header value too large", FileLocation::offset(start));
      ++pos;
    }
    if (pos == start) throw FormatError(path, "malformed PPM header", FileLocation::offset(start));
    return value;
  };
  const std::size_t width = next_token();
  const std::size_t height = next_token();
  const std::size_t maxval = next_token();
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError(path, "malformed PPM header", FileLocation::offset(pos));
  }
  ++pos;
  if (width == 0 || height == 0) throw FormatError(path, "PPM has zero size");
  if (maxval == 0 || maxval > 255) {
    throw FormatError(path, "only 8-bit PPM is supported (maxval " + std::to_string(maxval) + ")");
  }
  const std::size_t need = width * height * 3;
  if (bytes.size() - pos < need) throw TruncationError(path, pos + need, bytes.size());
  std::vector<double> rgb(need);
  for (std::size_t i = 0; i < need; ++i) {
    const auto v = static_cast<unsigned char>(bytes[pos + i]);
    if (v > maxval) throw FormatError(path, "sample exceeds maxval", FileLocation::offset(pos + i));
    rgb[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return StyleImage(width, height, std::move(rgb));
}

inline StyleImage parse_png(const std::string& path, std::string_view bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw FormatError(path, std::string("cannot decode PNG: ") + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw FormatError(path, "16-bit PNG is not supported");
  }
  const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  image.format = alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  const std::size_t channels = alpha ? 4 : 3;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw FormatError(path, "cannot decode PNG: " + msg);
  }
  const std::size_t width = image.width;
  const std::size_t height = image.height;
  std::vector<double> rgb(width * height * 3);
  for (std::size_t i = 0; i < width * height; ++i) {
    for (std::size_t c = 0; c < 3; ++c) rgb[3 * i + c] = buffer[channels * i + c] / 255.0;
  }
  return StyleImage(width, height, std::move(rgb));
}

inline StyleImage read_image(const fs::path& path) {
  const std::string bytes = read_file(path);
  static constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
    return parse_png(path.string(), bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return parse_ppm(path.string(), bytes);
  throw FormatError(path.string(), "unsupported image format (expected PNG or binary PPM)");
}

/// Binary PPM, samples rounded to 8 bits.
inline std::string format_ppm(const StyleImage& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  for (double v : img.data()) out.push_back(static_cast<char>(quantize_color(v)));
  return out;
}

inline bool is_image_path(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".ppm";
}

}  // namespace spcd::io

#endif  // SPECTRAL_PCD_IO_IMAGE_HPP
