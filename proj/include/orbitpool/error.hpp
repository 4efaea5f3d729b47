#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitpool {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (shape, length, range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two operands disagree in length or dimensionality.
class DimensionMismatch : public InvalidArgument {
 public:
  DimensionMismatch(const std::string& what, std::size_t lhs, std::size_t rhs)
      : InvalidArgument(what + ": dimension mismatch (" + std::to_string(lhs) +
                        " vs " + std::to_string(rhs) + ")"),
        lhs_(lhs),
        rhs_(rhs) {}

  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

/// Malformed configuration, sequence grammar or manifest.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class FormatErrc {
  io,
  bad_magic,
  bad_version,
  bad_header,
  truncated,
  trailing_data,
  non_finite,
};

const char* to_string(FormatErrc code) noexcept;

/// Binary file could not be decoded. code() tells the failure class apart.
class FormatError : public Error {
 public:
  FormatError(FormatErrc code, const std::string& what)
      : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

  FormatErrc code() const noexcept { return code_; }

 private:
  FormatErrc code_;
};

/// A pipeline stage needs an artifact an earlier stage has not produced.
class MissingArtifact : public Error {
 public:
  MissingArtifact(const std::string& stage, const std::string& path)
      : Error("missing output of stage '" + stage + "': " + path), stage_(stage) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

inline const char* to_string(FormatErrc code) noexcept {
  switch (code) {
    case FormatErrc::io: return "io error";
    case FormatErrc::bad_magic: return "bad magic";
    case FormatErrc::bad_version: return "unsupported version";
    case FormatErrc::bad_header: return "bad header";
    case FormatErrc::truncated: return "truncated payload";
    case FormatErrc::trailing_data: return "trailing data";
    case FormatErrc::non_finite: return "non-finite value";
  }
  return "format error";
}

}  // namespace orbitpool
