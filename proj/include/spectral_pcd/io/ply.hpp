// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// PLY reader/writer for colored point clouds.
//
// Reads ascii and binary_little_endian files with any scalar property types.
// The vertex element must carry x, y, z and red, green, blue; other elements
// (faces, ...) and extra vertex properties are skipped. Integer colors are
// scaled by their type's maximum (255 for uchar), float colors must already
// lie in [0, 1].
//
// Writes x, y, z as float and red, green, blue as uchar, binary little-endian
// by default.

#ifndef SPECTRAL_PCD_IO_PLY_HPP
#define SPECTRAL_PCD_IO_PLY_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/file.hpp"

namespace spcd::io {

enum class PlyFormat { kAscii, kBinaryLittleEndian };

namespace ply_detail {

enum class ScalarType { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

inline std::optional<ScalarType> parse_type(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::kInt8;
  if (name == "uchar" || name == "uint8") return ScalarType::kUInt8;
  if (name == "short" || name == "int16") return ScalarType::kInt16;
  if (name == "ushort" || name == "uint16") return ScalarType::kUInt16;
  if (name == "int" || name == "int32") return ScalarType::kInt32;
  if (name == "uint" || name == "uint32") return ScalarType::kUInt32;
  if (name == "float" || name == "float32") return ScalarType::kFloat32;
  if (name == "double" || name == "float64") return ScalarType::kFloat64;
  return std::nullopt;
}

inline std::size_t type_size(ScalarType t) {
  switch (t) {
    case ScalarType::kInt8:
    case ScalarType::kUInt8:
      return 1;
    case ScalarType::kInt16:
    case ScalarType::kUInt16:
      return 2;
    case ScalarType::kInt32:
    case ScalarType::kUInt32:
    case ScalarType::kFloat32:
      return 4;
    case ScalarType::kFloat64:
      return 8;
  }
  return 0;
}

inline bool is_float(ScalarType t) {
  return t == ScalarType::kFloat32 || t == ScalarType::kFloat64;
}

/// Scale that maps the type's full integer range onto [0, 1].
inline double color_scale(ScalarType t) {
  switch (t) {
    case ScalarType::kUInt8:
      return 1.0 / 255.0;
    case ScalarType::kUInt16:
      return 1.0 / 65535.0;
    case ScalarType::kFloat32:
    case ScalarType::kFloat64:
      return 1.0;
    default:
      return 0.0;
  }
}

inline double read_binary(std::string_view bytes, std::size_t offset, ScalarType t) {
  switch (t) {
    case ScalarType::kInt8:
      return static_cast<std::int8_t>(bytes[offset]);
    case ScalarType::kUInt8:
      return static_cast<unsigned char>(bytes[offset]);
    case ScalarType::kInt16:
      return get_le<std::int16_t>(bytes, offset);
    case ScalarType::kUInt16:
      return get_le<std::uint16_t>(bytes, offset);
    case ScalarType::kInt32:
      return get_le<std::int32_t>(bytes, offset);
    case ScalarType::kUInt32:
      return get_le<std::uint32_t>(bytes, offset);
    case ScalarType::kFloat32:
      return get_le<float>(bytes, offset);
    case ScalarType::kFloat64:
      return get_le<double>(bytes, offset);
  }
  return 0.0;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::kFloat32;
  bool is_list = false;
  ScalarType count_type = ScalarType::kUInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  PlyFormat format = PlyFormat::kAscii;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
  std::size_t body_line = 0;
};

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline Header parse_header(const std::string& path, std::string_view bytes) {
  Header h;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_format = false;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= bytes.size()) return std::nullopt;
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(pos, end - pos);
    pos = std::min(end + 1, bytes.size());
    ++line_no;
    return line;
  };
  auto fail = [&](const std::string& msg) -> MalformedHeaderError {
    return MalformedHeaderError(path, msg, FileLocation::line(line_no));
  };

  auto first = next_line();
  if (!first || split_ws(*first) != std::vector<std::string_view>{"ply"}) {
    throw MalformedHeaderError(path, "missing 'ply' magic line", FileLocation::line(1));
  }
  for (;;) {
    auto line = next_line();
    if (!line) throw fail("header not terminated by end_header");
    const auto tok = split_ws(*line);
    if (tok.empty()) continue;
    if (tok[0] == "end_header") break;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() != 3) throw fail("format line needs a type and a version");
      if (tok[1] == "ascii") {
        h.format = PlyFormat::kAscii;
      } else if (tok[1] == "binary_little_endian") {
        h.format = PlyFormat::kBinaryLittleEndian;
      } else if (tok[1] == "binary_big_endian") {
        throw FormatError(path, "binary_big_endian PLY is not supported",
                          FileLocation::line(line_no));
      } else {
        throw fail("unknown PLY format '" + std::string(tok[1]) + "'");
      }
      saw_format = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) throw fail("element line needs a name and a count");
      Element e;
      e.name = std::string(tok[1]);
      auto [p, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), e.count);
      if (ec != std::errc{} || p != tok[2].data() + tok[2].size()) {
        throw fail("invalid element count '" + std::string(tok[2]) + "'");
      }
      h.elements.push_back(std::move(e));
    } else if (tok[0] == "property") {
      if (h.elements.empty()) throw fail("property declared before any element");
      Property prop;
      if (tok.size() == 5 && tok[1] == "list") {
        auto count_type = parse_type(tok[2]);
        auto item_type = parse_type(tok[3]);
        if (!count_type || !item_type || is_float(*count_type)) throw fail("invalid list property types");
        prop.is_list = true;
        prop.count_type = *count_type;
        prop.type = *item_type;
        prop.name = std::string(tok[4]);
      } else if (tok.size() == 3) {
        auto type = parse_type(tok[1]);
        if (!type) throw fail("unknown property type '" + std::string(tok[1]) + "'");
        prop.type = *type;
        prop.name = std::string(tok[2]);
      } else {
        throw fail("malformed property line");
      }
      h.elements.back().properties.push_back(std::move(prop));
    } else {
      throw fail("unexpected header keyword '" + std::string(tok[0]) + "'");
    }
  }
  if (!saw_format) throw MalformedHeaderError(path, "missing format line", FileLocation::line(line_no));
  h.body_offset = pos;
  h.body_line = line_no + 1;
  return h;
}

struct VertexLayout {
  std::array<std::size_t, 3> xyz{};
  std::array<std::size_t, 3> rgb{};
};

inline VertexLayout locate_vertex_properties(const std::string& path, const Element& vertex) {
  auto find = [&](std::initializer_list<std::string_view> names) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
      for (auto n : names) {
        if (vertex.properties[i].name == n) return i;
      }
    }
    return std::nullopt;
  };
  VertexLayout layout;
  const std::array<std::string_view, 3> axes{"x", "y", "z"};
  for (std::size_t a = 0; a < 3; ++a) {
    auto i = find({axes[a]});
    if (!i) throw MissingPropertyError(path, "vertex element lacks property '" + std::string(axes[a]) + "'");
    if (vertex.properties[*i].is_list) throw MalformedHeaderError(path, "coordinate declared as list");
    layout.xyz[a] = *i;
  }
  const std::array<std::string_view, 3> colors{"red", "green", "blue"};
  for (std::size_t c = 0; c < 3; ++c) {
    auto i = find({colors[c]});
    if (!i) {
      throw MissingPropertyError(path, "vertex element lacks color property '" +
                                           std::string(colors[c]) + "'");
    }
    const Property& p = vertex.properties[*i];
    if (p.is_list || color_scale(p.type) == 0.0) {
      throw MalformedHeaderError(path, "color property '" + p.name +
                                           "' must be uchar, ushort, float or double");
    }
    layout.rgb[c] = *i;
  }
  return layout;
}

inline Point make_point(const std::string& path, const std::vector<double>& values,
                        const Element& vertex, const VertexLayout& layout, FileLocation where) {
  Point p{values[layout.xyz[0]], values[layout.xyz[1]], values[layout.xyz[2]], 0, 0, 0};
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw NonFiniteValueError(path, "non-finite vertex coordinate", where);
  }
  std::array<double, 3> rgb{};
  for (std::size_t c = 0; c < 3; ++c) {
    const Property& prop = vertex.properties[layout.rgb[c]];
    rgb[c] = values[layout.rgb[c]] * color_scale(prop.type);
    if (!(rgb[c] >= 0.0 && rgb[c] <= 1.0)) {
      throw IoError(path, "color value outside [0, 1]", where);
    }
  }
  p.r = rgb[0];
  p.g = rgb[1];
  p.b = rgb[2];
  return p;
}

}  // namespace ply_detail

inline PointCloud parse_ply(const std::string& path, std::string_view bytes) {
  using namespace ply_detail;
  const Header h = parse_header(path, bytes);

  std::size_t vertex_idx = h.elements.size();
  for (std::size_t i = 0; i < h.elements.size(); ++i) {
    if (h.elements[i].name == "vertex") {
      vertex_idx = i;
      break;
    }
  }
  if (vertex_idx == h.elements.size()) throw MissingPropertyError(path, "no vertex element");
  const Element& vertex = h.elements[vertex_idx];
  const VertexLayout layout = locate_vertex_properties(path, vertex);
  if (vertex.count == 0) throw InputError(path + ": vertex element is empty");

  std::vector<Point> points;
  points.reserve(vertex.count);
  std::vector<double> values;

  if (h.format == PlyFormat::kAscii) {
    std::size_t pos = h.body_offset;
    std::size_t line_no = h.body_line - 1;
    auto next_tokens = [&]() -> std::optional<std::vector<std::string_view>> {
      while (pos < bytes.size()) {
        std::size_t end = bytes.find('\n', pos);
        if (end == std::string_view::npos) end = bytes.size();
        auto tok = split_ws(bytes.substr(pos, end - pos));
        pos = std::min(end + 1, bytes.size());
        ++line_no;
        if (!tok.empty()) return tok;
      }
      return std::nullopt;
    };
    for (std::size_t e = 0; e <= vertex_idx; ++e) {
      const Element& el = h.elements[e];
      for (std::size_t n = 0; n < el.count; ++n) {
        const auto row = next_tokens();
        if (!row) {
          throw IoError(path, "file ends after " + std::to_string(n) + " of " +
                                  std::to_string(el.count) + " '" + el.name + "' rows",
                        FileLocation::line(line_no));
        }
        const auto& tok = *row;
        if (e != vertex_idx) continue;
        values.assign(el.properties.size(), 0.0);
        std::size_t t = 0;
        for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
          const Property& prop = el.properties[pi];
          auto parse_number = [&](std::string_view s) {
            double v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (p != s.data() + s.size() || (ec != std::errc{} && ec != std::errc::result_out_of_range)) {
              // from_chars rejects "nan"/"inf" spellings with a sign or case it
              // does not know; report them as non-finite rather than malformed.
              std::string lower(s);
              for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
              if (lower.find("nan") != std::string::npos || lower.find("inf") != std::string::npos) {
                return std::numeric_limits<double>::quiet_NaN();
              }
              throw IoError(path, "invalid number '" + std::string(s) + "'", FileLocation::line(line_no));
            }
            return v;
          };
          if (prop.is_list) {
            if (t >= tok.size()) throw IoError(path, "too few values in vertex row", FileLocation::line(line_no));
            const auto count = static_cast<std::size_t>(parse_number(tok[t++]));
            t += count;
            continue;
          }
          if (t >= tok.size()) throw IoError(path, "too few values in vertex row", FileLocation::line(line_no));
          values[pi] = parse_number(tok[t++]);
        }
        points.push_back(make_point(path, values, vertex, layout, FileLocation::line(line_no)));
      }
    }
  } else {
    std::size_t offset = h.body_offset;
    auto need = [&](std::size_t n) {
      if (offset + n > bytes.size()) throw TruncationError(path, offset + n, bytes.size());
    };
    for (std::size_t e = 0; e <= vertex_idx; ++e) {
      const Element& el = h.elements[e];
      for (std::size_t n = 0; n < el.count; ++n) {
        const std::size_t row_offset = offset;
        if (e == vertex_idx) values.assign(el.properties.size(), 0.0);
        for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
          const Property& prop = el.properties[pi];
          if (prop.is_list) {
            need(type_size(prop.count_type));
            const auto count = static_cast<std::size_t>(read_binary(bytes, offset, prop.count_type));
            offset += type_size(prop.count_type);
            need(count * type_size(prop.type));
            offset += count * type_size(prop.type);
            continue;
          }
          need(type_size(prop.type));
          if (e == vertex_idx) values[pi] = read_binary(bytes, offset, prop.type);
          offset += type_size(prop.type);
        }
        if (e == vertex_idx) {
          points.push_back(make_point(path, values, vertex, layout, FileLocation::offset(row_offset)));
        }
      }
    }
  }
  return PointCloud(std::move(points));
}

inline PointCloud read_ply(const fs::path& path) { return parse_ply(path.string(), read_file(path)); }

inline std::uint8_t quantize_color(double c) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0));
}

inline std::string format_ply(const PointCloud& cloud, PlyFormat format = PlyFormat::kBinaryLittleEndian) {
  std::string out;
  out += "ply\n";
  out += format == PlyFormat::kAscii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
  out += "element vertex " + std::to_string(cloud.size()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "end_header\n";
  if (format == PlyFormat::kAscii) {
    char buf[64];
    for (const Point& p : cloud) {
      for (double c : {p.x, p.y, p.z}) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<float>(c));
        out.append(buf, end);
        out += ' ';
      }
      out += std::to_string(quantize_color(p.r)) + ' ' + std::to_string(quantize_color(p.g)) + ' ' +
             std::to_string(quantize_color(p.b)) + '\n';
    }
  } else {
    out.reserve(out.size() + cloud.size() * 15);
    for (const Point& p : cloud) {
      put_le(out, static_cast<float>(p.x));
      put_le(out, static_cast<float>(p.y));
      put_le(out, static_cast<float>(p.z));
      put_le(out, quantize_color(p.r));
      put_le(out, quantize_color(p.g));
      put_le(out, quantize_color(p.b));
    }
  }
  return out;
}

inline void write_ply(const PointCloud& cloud, const fs::path& path,
                      PlyFormat format = PlyFormat::kBinaryLittleEndian) {
  write_file_atomic(path, format_ply(cloud, format));
}

}  // namespace spcd::io

#endif  // SPECTRAL_PCD_IO_PLY_HPP
