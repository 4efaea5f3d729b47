#include "orbitpool/pooling/descriptor_file.hpp"

#include <cmath>
#include <fstream>

#include "../byte_codec.hpp"
#include "orbitpool/error.hpp"
#include "orbitpool/file_util.hpp"

namespace orbitpool {

namespace {
constexpr std::string_view kMagic = "DSC1";
constexpr std::uint16_t kVersion = 1;
}  // namespace

std::vector<std::uint8_t> encode_descriptor_file(const std::vector<NamedDescriptor>& entries) {
  const std::size_t dims = entries.empty() ? 0 : entries.front().descriptor.dims();
  const std::string tag = entries.empty() ? std::string() : entries.front().descriptor.sequence_tag;
  detail::ByteWriter w;
  w.bytes(kMagic);
  w.u16(kVersion);
  w.u16(0);
  w.u32(static_cast<std::uint32_t>(entries.size()));
  w.u32(static_cast<std::uint32_t>(dims));
  w.u32(static_cast<std::uint32_t>(tag.size()));
  w.bytes(tag);
  for (const NamedDescriptor& e : entries) {
    if (e.descriptor.dims() != dims) {
      throw DimensionMismatch("DSC1: descriptor '" + e.id + "' dims", e.descriptor.dims(), dims);
    }
    if (e.descriptor.sequence_tag != tag) {
      throw InvalidArgument("DSC1: descriptor '" + e.id + "' has a different sequence tag");
    }
    w.u32(static_cast<std::uint32_t>(e.id.size()));
    w.bytes(e.id);
    w.u8(e.descriptor.normalized ? 1 : 0);
    for (float v : e.descriptor.values) w.f32(v);
  }
  return std::move(w).take();
}

std::vector<NamedDescriptor> decode_descriptor_file(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "DSC1");
  r.expect_magic(kMagic);
  const std::uint16_t version = r.u16();
  if (version != kVersion) {
    throw FormatError(FormatErrc::bad_version, "DSC1: version " + std::to_string(version));
  }
  if (r.u16() != 0) throw FormatError(FormatErrc::bad_header, "DSC1: reserved bytes not zero");
  const std::uint32_t n_entries = r.u32();
  const std::uint32_t dims = r.u32();
  const auto tag_bytes = r.take(r.u32());
  const std::string tag(tag_bytes.begin(), tag_bytes.end());

  std::vector<NamedDescriptor> out;
  for (std::uint32_t i = 0; i < n_entries; ++i) {
    const auto id_bytes = r.take(r.u32());
    NamedDescriptor e{std::string(id_bytes.begin(), id_bytes.end()), Descriptor{}};
    const auto flag = r.take(1)[0];
    if (flag > 1) throw FormatError(FormatErrc::bad_header, "DSC1: normalized flag must be 0 or 1");
    e.descriptor.normalized = flag == 1;
    e.descriptor.sequence_tag = tag;
    if (r.remaining() < static_cast<std::size_t>(dims) * 4) {
      throw FormatError(FormatErrc::truncated, "DSC1: entry '" + e.id + "' payload");
    }
    e.descriptor.values.resize(dims);
    for (float& v : e.descriptor.values) {
      v = r.f32();
      if (!std::isfinite(v)) throw FormatError(FormatErrc::non_finite, "DSC1: entry '" + e.id + "'");
    }
    out.push_back(std::move(e));
  }
  r.expect_end();
  return out;
}

void write_descriptor_file(const std::vector<NamedDescriptor>& entries,
                           const std::filesystem::path& path) {
  write_file_atomic(path, encode_descriptor_file(entries));
}

std::vector<NamedDescriptor> read_descriptor_file(const std::filesystem::path& path) {
  return decode_descriptor_file(read_file_bytes(path));
}

bool is_descriptor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  return in.read(magic, 4) && std::string_view(magic, 4) == kMagic;
}

}  // namespace orbitpool
