#pragma once

// Hash index "BHI1" (little-endian):
//   magic "BHI1", u16 version = 1, u32 n_bits, u32 n_entries,
//   per entry: u32 id length, UTF-8 id, ceil(n_bits/8) packed hash bytes.
//
// Threshold sidecar "BTH1" (little-endian):
//   magic "BTH1", u16 version = 1, u32 n_bits, n_bits x f32 thresholds.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "orbitpool/core/binary_hash.hpp"
#include "orbitpool/hashing/hashing.hpp"

namespace orbitpool {

struct HashEntry {
  std::string id;
  BinaryHash hash;

  friend bool operator==(const HashEntry&, const HashEntry&) = default;
};

struct HashIndex {
  std::size_t n_bits = 0;
  std::vector<HashEntry> entries;

  friend bool operator==(const HashIndex&, const HashIndex&) = default;
};

std::vector<std::uint8_t> encode_hash_index(const HashIndex& index);
HashIndex decode_hash_index(std::span<const std::uint8_t> bytes);
void write_hash_index(const HashIndex& index, const std::filesystem::path& path);
HashIndex read_hash_index(const std::filesystem::path& path);
bool is_hash_index_file(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_thresholds(const ThresholdVector& t);
/// source of the result is set to `source`.
ThresholdVector decode_thresholds(std::span<const std::uint8_t> bytes, std::string source = {});
void write_thresholds(const ThresholdVector& t, const std::filesystem::path& path);
ThresholdVector read_thresholds(const std::filesystem::path& path);

}  // namespace orbitpool
