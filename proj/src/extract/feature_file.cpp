#include "orbitpool/extract/feature_file.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "../byte_codec.hpp"
#include "orbitpool/error.hpp"
#include "orbitpool/file_util.hpp"

namespace orbitpool {

namespace {

constexpr std::string_view kMagic = "FOT1";
constexpr std::uint32_t kFlagRotation = 1u << 0;
constexpr std::uint32_t kFlagScale = 1u << 1;

std::uint32_t to_u32(std::size_t v, const char* field) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument(std::string("FOT1: ") + field + " does not fit in u32");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_feature_file(const FeatureOrbitTensor& t) {
  const TensorShape& s = t.shape();
  detail::ByteWriter w;
  w.bytes(kMagic);
  w.u16(kFeatureFileVersion);
  w.u16(0);
  w.u32(to_u32(s.n_rot, "n_rot"));
  w.u32(to_u32(s.n_scale, "n_scale"));
  w.u32(to_u32(s.channels, "channels"));
  w.u32(to_u32(s.height, "height"));
  w.u32(to_u32(s.width, "width"));
  std::uint32_t flags = 0;
  if (t.presence().rotation) flags |= kFlagRotation;
  if (t.presence().scale) flags |= kFlagScale;
  w.u32(flags);
  for (float v : t.data()) w.f32(v);
  return std::move(w).take();
}

FeatureOrbitTensor decode_feature_file(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "FOT1");
  r.expect_magic(kMagic);
  const std::uint16_t version = r.u16();
  if (version != kFeatureFileVersion) {
    throw FormatError(FormatErrc::bad_version, "FOT1: version " + std::to_string(version));
  }
  if (r.u16() != 0) throw FormatError(FormatErrc::bad_header, "FOT1: reserved bytes not zero");

  TensorShape shape;
  shape.n_rot = r.u32();
  shape.n_scale = r.u32();
  shape.channels = r.u32();
  shape.height = r.u32();
  shape.width = r.u32();
  const std::uint32_t flags = r.u32();
  if ((flags & ~(kFlagRotation | kFlagScale)) != 0) {
    throw FormatError(FormatErrc::bad_header, "FOT1: unknown flag bits");
  }
  const AxisPresence presence{(flags & kFlagRotation) != 0, (flags & kFlagScale) != 0};
  if (shape.n_rot == 0 || shape.n_scale == 0 || shape.channels == 0 || shape.height == 0 ||
      shape.width == 0) {
    throw FormatError(FormatErrc::bad_header, "FOT1: zero-sized axis");
  }
  if ((!presence.rotation && shape.n_rot != 1) || (!presence.scale && shape.n_scale != 1)) {
    throw FormatError(FormatErrc::bad_header, "FOT1: axis extent > 1 without its presence flag");
  }

  // Five u32 factors cannot overflow 64 bits unless the payload is absurd;
  // check against the bytes actually present before allocating.
  const unsigned __int128 count = static_cast<unsigned __int128>(shape.n_rot) * shape.n_scale *
                                  shape.channels * shape.height * shape.width;
  if (count * 4 > r.remaining()) {
    throw FormatError(FormatErrc::truncated,
                      "FOT1: header declares " + std::to_string(static_cast<std::uint64_t>(count)) +
                          " floats, payload holds " + std::to_string(r.remaining() / 4));
  }
  std::vector<float> data(static_cast<std::size_t>(count));
  for (float& v : data) {
    v = r.f32();
    if (!std::isfinite(v)) throw FormatError(FormatErrc::non_finite, "FOT1: payload value");
  }
  r.expect_end();
  return FeatureOrbitTensor(shape, std::move(data), presence);
}

void write_feature_file(const FeatureOrbitTensor& t, const std::filesystem::path& path) {
  write_file_atomic(path, encode_feature_file(t));
}

FeatureOrbitTensor read_feature_file(const std::filesystem::path& path) {
  return decode_feature_file(read_file_bytes(path));
}

}  // namespace orbitpool
