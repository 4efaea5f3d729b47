#include "orbitpool/hashing/hash_file.hpp"

#include <cmath>
#include <fstream>

#include "../byte_codec.hpp"
#include "orbitpool/error.hpp"
#include "orbitpool/file_util.hpp"

namespace orbitpool {

namespace {
constexpr std::string_view kIndexMagic = "BHI1";
constexpr std::string_view kThresholdMagic = "BTH1";
constexpr std::uint16_t kVersion = 1;

void check_version(detail::ByteReader& r, std::string_view what) {
  const std::uint16_t version = r.u16();
  if (version != kVersion) {
    throw FormatError(FormatErrc::bad_version,
                      std::string(what) + ": version " + std::to_string(version));
  }
}
}  // namespace

std::vector<std::uint8_t> encode_hash_index(const HashIndex& index) {
  detail::ByteWriter w;
  w.bytes(kIndexMagic);
  w.u16(kVersion);
  w.u32(static_cast<std::uint32_t>(index.n_bits));
  w.u32(static_cast<std::uint32_t>(index.entries.size()));
  for (const HashEntry& e : index.entries) {
    if (e.hash.n_bits() != index.n_bits) {
      throw DimensionMismatch("BHI1: hash '" + e.id + "' bits", e.hash.n_bits(), index.n_bits);
    }
    w.u32(static_cast<std::uint32_t>(e.id.size()));
    w.bytes(e.id);
    w.raw(e.hash.bytes());
  }
  return std::move(w).take();
}

HashIndex decode_hash_index(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "BHI1");
  r.expect_magic(kIndexMagic);
  check_version(r, "BHI1");
  HashIndex index;
  index.n_bits = r.u32();
  const std::uint32_t n_entries = r.u32();
  const std::size_t n_bytes = (index.n_bits + 7) / 8;
  for (std::uint32_t i = 0; i < n_entries; ++i) {
    const auto id = r.take(r.u32());
    HashEntry e{std::string(id.begin(), id.end()), BinaryHash{}};
    try {
      e.hash = BinaryHash(r.take(n_bytes), index.n_bits);
    } catch (const InvalidArgument& ex) {
      throw FormatError(FormatErrc::bad_header, "BHI1: entry '" + e.id + "': " + ex.what());
    }
    index.entries.push_back(std::move(e));
  }
  r.expect_end();
  return index;
}

void write_hash_index(const HashIndex& index, const std::filesystem::path& path) {
  write_file_atomic(path, encode_hash_index(index));
}

HashIndex read_hash_index(const std::filesystem::path& path) {
  return decode_hash_index(read_file_bytes(path));
}

bool is_hash_index_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  return in.read(magic, 4) && std::string_view(magic, 4) == kIndexMagic;
}

std::vector<std::uint8_t> encode_thresholds(const ThresholdVector& t) {
  detail::ByteWriter w;
  w.bytes(kThresholdMagic);
  w.u16(kVersion);
  w.u32(static_cast<std::uint32_t>(t.dims()));
  for (float v : t.thresholds) w.f32(v);
  return std::move(w).take();
}

ThresholdVector decode_thresholds(std::span<const std::uint8_t> bytes, std::string source) {
  detail::ByteReader r(bytes, "BTH1");
  r.expect_magic(kThresholdMagic);
  check_version(r, "BTH1");
  const std::uint32_t n = r.u32();
  if (r.remaining() < static_cast<std::size_t>(n) * 4) {
    throw FormatError(FormatErrc::truncated, "BTH1: header declares " + std::to_string(n) +
                                                 " thresholds, payload holds " +
                                                 std::to_string(r.remaining() / 4));
  }
  ThresholdVector t{std::vector<float>(n), std::move(source)};
  for (float& v : t.thresholds) {
    v = r.f32();
    if (!std::isfinite(v)) throw FormatError(FormatErrc::non_finite, "BTH1: threshold");
  }
  r.expect_end();
  return t;
}

void write_thresholds(const ThresholdVector& t, const std::filesystem::path& path) {
  write_file_atomic(path, encode_thresholds(t));
}

ThresholdVector read_thresholds(const std::filesystem::path& path) {
  return decode_thresholds(read_file_bytes(path), path.string());
}

}  // namespace orbitpool
