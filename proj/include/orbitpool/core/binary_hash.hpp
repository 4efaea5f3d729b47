#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace orbitpool {

/// Bit-packed binary code. Bit i lives in byte i/8 at position i%8. Storage
/// is padded with zero bytes to a whole number of 64-bit words so distance
/// kernels can work word by word; pad bits are always zero.
class BinaryHash {
 public:
  BinaryHash() = default;

  /// All-zero hash of n_bits bits.
  explicit BinaryHash(std::size_t n_bits);

  /// From ceil(n_bits/8) packed bytes. Throws if the length is wrong or a
  /// pad bit in the last byte is set.
  BinaryHash(std::span<const std::uint8_t> bytes, std::size_t n_bits);

  std::size_t n_bits() const noexcept { return n_bits_; }
  std::size_t n_bytes() const noexcept { return (n_bits_ + 7) / 8; }
  std::size_t n_words() const noexcept { return (n_bits_ + 63) / 64; }

  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool value);

  /// Packed bytes without word padding.
  std::span<const std::uint8_t> bytes() const noexcept { return {storage_.data(), n_bytes()}; }
  /// Word-padded storage, n_words() * 8 bytes.
  const std::uint8_t* words() const noexcept { return storage_.data(); }
  std::uint8_t* mutable_words() noexcept { return storage_.data(); }

  friend bool operator==(const BinaryHash&, const BinaryHash&) = default;

 private:
  std::size_t n_bits_ = 0;
  std::vector<std::uint8_t> storage_;
};

/// Number of differing bits, via word-level popcount. Throws DimensionMismatch.
std::size_t hamming_distance(const BinaryHash& a, const BinaryHash& b);

}  // namespace orbitpool
