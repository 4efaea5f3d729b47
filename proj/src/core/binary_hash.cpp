#include "orbitpool/core/binary_hash.hpp"

#include <algorithm>
#include <string>

#include "orbitpool/error.hpp"
#include "orbitpool/simd/kernels.hpp"

namespace orbitpool {

BinaryHash::BinaryHash(std::size_t n_bits) : n_bits_(n_bits), storage_(n_words() * 8, 0) {}

BinaryHash::BinaryHash(std::span<const std::uint8_t> bytes, std::size_t n_bits)
    : BinaryHash(n_bits) {
  if (bytes.size() != n_bytes()) {
    throw DimensionMismatch("BinaryHash: packed byte count", bytes.size(), n_bytes());
  }
  std::copy(bytes.begin(), bytes.end(), storage_.begin());
  if (const std::size_t used = n_bits % 8; used != 0) {
    const auto pad_mask = static_cast<std::uint8_t>(0xFFu << used);
    if ((storage_[n_bytes() - 1] & pad_mask) != 0) {
      throw InvalidArgument("BinaryHash: pad bits of the last byte must be zero");
    }
  }
}

bool BinaryHash::bit(std::size_t i) const {
  if (i >= n_bits_) throw InvalidArgument("BinaryHash::bit: index " + std::to_string(i) + " out of range");
  return (storage_[i / 8] >> (i % 8)) & 1u;
}

void BinaryHash::set_bit(std::size_t i, bool value) {
  if (i >= n_bits_) throw InvalidArgument("BinaryHash::set_bit: index " + std::to_string(i) + " out of range");
  const auto mask = static_cast<std::uint8_t>(1u << (i % 8));
  if (value) {
    storage_[i / 8] |= mask;
  } else {
    storage_[i / 8] &= static_cast<std::uint8_t>(~mask);
  }
}

std::size_t hamming_distance(const BinaryHash& a, const BinaryHash& b) {
  if (a.n_bits() != b.n_bits()) throw DimensionMismatch("hamming_distance", a.n_bits(), b.n_bits());
  return static_cast<std::size_t>(simd::active().xor_popcount(a.words(), b.words(), a.n_words()));
}

}  // namespace orbitpool
