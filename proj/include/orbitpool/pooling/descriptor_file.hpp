#pragma once

// DSC1 descriptor store written by the pool stage. Little-endian.
//
//   magic "DSC1", u16 version = 1, u16 reserved = 0,
//   u32 n_entries, u32 dims, u32 tag length, tag bytes (UTF-8),
//   per entry: u32 id length, id bytes, u8 normalized flag, dims x f32.
//
// Every entry shares dims and the sequence tag.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "orbitpool/core/descriptor.hpp"

namespace orbitpool {

struct NamedDescriptor {
  std::string id;
  Descriptor descriptor;
};

std::vector<std::uint8_t> encode_descriptor_file(const std::vector<NamedDescriptor>& entries);
std::vector<NamedDescriptor> decode_descriptor_file(std::span<const std::uint8_t> bytes);

void write_descriptor_file(const std::vector<NamedDescriptor>& entries,
                           const std::filesystem::path& path);
std::vector<NamedDescriptor> read_descriptor_file(const std::filesystem::path& path);

/// True if the file starts with the DSC1 magic.
bool is_descriptor_file(const std::filesystem::path& path);

}  // namespace orbitpool
