#pragma once

// FOT1 feature-orbit file. All integers and floats little-endian.
//
//   offset  size  field
//   0       4     magic "FOT1"
//   4       2     u16 version = 1
//   6       2     reserved, zero
//   8       20    u32 n_rot, n_scale, channels, height, width
//   28      4     u32 flags: bit 0 rotation generated, bit 1 scale generated
//   32      4*N   f32 payload in (r, s, c, h, w) order, w fastest
//
// One file holds the whole orbit of one image.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "orbitpool/core/tensor.hpp"

namespace orbitpool {

inline constexpr std::uint16_t kFeatureFileVersion = 1;
inline constexpr std::size_t kFeatureFileHeaderSize = 32;

std::vector<std::uint8_t> encode_feature_file(const FeatureOrbitTensor& t);

/// Throws FormatError with code bad_magic, bad_version, bad_header,
/// truncated, trailing_data or non_finite.
FeatureOrbitTensor decode_feature_file(std::span<const std::uint8_t> bytes);

/// Written atomically (temporary file + rename).
void write_feature_file(const FeatureOrbitTensor& t, const std::filesystem::path& path);
FeatureOrbitTensor read_feature_file(const std::filesystem::path& path);

}  // namespace orbitpool
