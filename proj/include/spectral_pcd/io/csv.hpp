// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// CSV point clouds: header "x,y,z,r,g,b", one point per row, colors as
// integers 0-255.

#ifndef SPECTRAL_PCD_IO_CSV_HPP
#define SPECTRAL_PCD_IO_CSV_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/file.hpp"
#include "spectral_pcd/io/ply.hpp"

namespace spcd::io {

namespace csv_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace csv_detail

inline PointCloud parse_csv(const std::string& path, std::string_view bytes) {
  using csv_detail::split_fields;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Point> points;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    const std::string_view line = csv_detail::trim(bytes.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      const std::vector<std::string_view> expected{"x", "y", "z", "r", "g", "b"};
      if (fields.size() >= 3 && fields.size() < 6 && fields[0] == "x") {
        throw MissingPropertyError(path, "header lacks color columns r,g,b", FileLocation::line(line_no));
      }
      if (fields != expected) {
        throw MalformedHeaderError(path, "expected header 'x,y,z,r,g,b'", FileLocation::line(line_no));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 6) {
      throw IoError(path, "expected 6 fields, found " + std::to_string(fields.size()),
                    FileLocation::line(line_no));
    }
    std::array<double, 3> xyz{};
    for (std::size_t a = 0; a < 3; ++a) {
      const auto f = fields[a];
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), xyz[a]);
      if (p != f.data() + f.size() || ec != std::errc{}) {
        throw IoError(path, "invalid coordinate '" + std::string(f) + "'", FileLocation::line(line_no));
      }
      if (!std::isfinite(xyz[a])) {
        throw NonFiniteValueError(path, "non-finite coordinate", FileLocation::line(line_no));
      }
    }
    std::array<double, 3> rgb{};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto f = fields[3 + c];
      unsigned value = 0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (p != f.data() + f.size() || ec != std::errc{} || value > 255) {
        throw IoError(path, "color must be an integer 0-255, got '" + std::string(f) + "'",
                      FileLocation::line(line_no));
      }
      rgb[c] = static_cast<double>(value) / 255.0;
    }
    points.push_back({xyz[0], xyz[1], xyz[2], rgb[0], rgb[1], rgb[2]});
  }
  if (!header_seen) throw MalformedHeaderError(path, "file is empty", FileLocation::line(1));
  if (points.empty()) throw InputError(path + ": no points");
  return PointCloud(std::move(points));
}

inline PointCloud read_csv(const fs::path& path) { return parse_csv(path.string(), read_file(path)); }

/// Coordinates use the shortest representation that round-trips the double.
inline std::string format_csv(const PointCloud& cloud) {
  std::string out = "x,y,z,r,g,b\n";
  char buf[64];
  for (const Point& p : cloud) {
    for (double c : {p.x, p.y, p.z}) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
      out.append(buf, end);
      out += ',';
    }
    out += std::to_string(quantize_color(p.r)) + ',' + std::to_string(quantize_color(p.g)) + ',' +
           std::to_string(quantize_color(p.b)) + '\n';
  }
  return out;
}

inline void write_csv(const PointCloud& cloud, const fs::path& path) {
  write_file_atomic(path, format_csv(cloud));
}

}  // namespace spcd::io

#endif  // SPECTRAL_PCD_IO_CSV_HPP
