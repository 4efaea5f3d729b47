#pragma once

// Little-endian encode/decode helpers shared by the binary file formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitpool/error.hpp"

namespace orbitpool::detail {

class ByteWriter {
 public:
  void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

  std::vector<std::uint8_t> take() && { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

/// Bounds-checked cursor; running past the end throws FormatError(truncated).
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> in, std::string_view what) : in_(in), what_(what) {}

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (remaining() < n) {
      throw FormatError(FormatErrc::truncated, what_ + ": need " + std::to_string(n) +
                                                   " more bytes at offset " + std::to_string(pos_) +
                                                   ", have " + std::to_string(remaining()));
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint16_t u16() {
    auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    auto b = take(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  float f32() { return std::bit_cast<float>(u32()); }

  void expect_magic(std::string_view magic) {
    if (remaining() < magic.size()) {
      throw FormatError(FormatErrc::truncated, what_ + ": file shorter than magic");
    }
    auto b = take(magic.size());
    if (std::memcmp(b.data(), magic.data(), magic.size()) != 0) {
      throw FormatError(FormatErrc::bad_magic,
                        what_ + ": expected \"" + std::string(magic) + "\"");
    }
  }
  void expect_end() const {
    if (remaining() != 0) {
      throw FormatError(FormatErrc::trailing_data,
                        what_ + ": " + std::to_string(remaining()) + " unexpected trailing bytes");
    }
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::string what_;
};

}  // namespace orbitpool::detail
