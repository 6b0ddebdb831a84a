// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exception hierarchy shared by every module.
//
// Error (std::runtime_error)
//  +- ParameterError           invalid numeric parameter (voxel size, gamma, ...)
//  +- InputError               invalid data (empty cloud, out-of-bounds point, ...)
//  |   +- ShapeError           two grids whose geometries disagree
//  |   +- EmptyReconstructionError
//  +- IoError                  carries a line number or byte offset
//      +- MalformedHeaderError, MissingPropertyError, NonFiniteValueError,
//         FormatError, TruncationError, ConventionMismatchError
//
// The CLI maps ParameterError, InputError and IoError to exit code 2 and
// everything else to 1.

#ifndef SPECTRAL_PCD_ERRORS_HPP
#define SPECTRAL_PCD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spcd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public InputError {
 public:
  using InputError::InputError;
};

/// No voxel survived thresholding. `occupied` is always 0 when thrown by the
/// library; `max_pi` is the largest occupancy value seen in the grid.
class EmptyReconstructionError : public InputError {
 public:
  EmptyReconstructionError(std::size_t occupied, double max_pi, double threshold)
      : InputError("empty reconstruction: " + std::to_string(occupied) +
                   " voxels above pi threshold " + std::to_string(threshold) +
                   " (max pi observed " + std::to_string(max_pi) + ")"),
        occupied_(occupied),
        max_pi_(max_pi),
        threshold_(threshold) {}

  std::size_t occupied() const noexcept { return occupied_; }
  double max_pi() const noexcept { return max_pi_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::size_t occupied_;
  double max_pi_;
  double threshold_;
};

/// Where in a file an I/O error was detected.
struct FileLocation {
  enum class Kind { kNone, kLine, kByteOffset };
  Kind kind = Kind::kNone;
  std::size_t value = 0;

  static FileLocation line(std::size_t n) { return {Kind::kLine, n}; }
  static FileLocation offset(std::size_t n) { return {Kind::kByteOffset, n}; }

  std::string describe() const {
    switch (kind) {
      case Kind::kLine:
        return "line " + std::to_string(value);
      case Kind::kByteOffset:
        return "byte offset " + std::to_string(value);
      case Kind::kNone:
        break;
    }
    return {};
  }
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what,
          FileLocation where = {})
      : Error(compose(path, what, where)), path_(path), where_(where) {}

  const std::string& path() const noexcept { return path_; }
  const FileLocation& where() const noexcept { return where_; }

 private:
  static std::string compose(const std::string& path, const std::string& what,
                             const FileLocation& where) {
    std::string msg = path;
    if (where.kind != FileLocation::Kind::kNone) msg += " (" + where.describe() + ")";
    return msg + ": " + what;
  }

  std::string path_;
  FileLocation where_;
};

class MalformedHeaderError : public IoError {
 public:
  using IoError::IoError;
};

class MissingPropertyError : public IoError {
 public:
  using IoError::IoError;
};

class NonFiniteValueError : public IoError {
 public:
  using IoError::IoError;
};

/// Unsupported or unrecognised file format (bad magic, 16-bit PNG, ...).
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

class TruncationError : public IoError {
 public:
  TruncationError(const std::string& path, std::size_t expected,
                  std::size_t actual)
      : IoError(path, "truncated: expected " + std::to_string(expected) +
                          " bytes, found " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class ConventionMismatchError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace spcd

#endif  // SPECTRAL_PCD_ERRORS_HPP
