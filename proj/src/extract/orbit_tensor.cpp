#include <algorithm>
#include <string>

#include "orbitpool/error.hpp"
#include "orbitpool/extract/feature_map.hpp"

namespace orbitpool {

FeatureOrbitTensor assemble_orbit_tensor(const std::vector<FeatureMap>& maps, std::size_t n_rot,
                                         std::size_t n_scale) {
  return assemble_orbit_tensor(maps, n_rot, n_scale, AxisPresence{n_rot > 1, n_scale > 1});
}

FeatureOrbitTensor assemble_orbit_tensor(const std::vector<FeatureMap>& maps, std::size_t n_rot,
                                         std::size_t n_scale, AxisPresence presence) {
  if (n_rot == 0 || n_scale == 0) throw InvalidArgument("assemble_orbit_tensor: empty orbit");
  if (maps.size() != n_rot * n_scale) {
    throw DimensionMismatch("assemble_orbit_tensor: map count vs n_rot*n_scale", maps.size(),
                            n_rot * n_scale);
  }
  const FeatureMap& first = maps.front();
  std::vector<float> data;
  data.reserve(maps.size() * first.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const FeatureMap& m = maps[i];
    if (m.channels != first.channels || m.height != first.height || m.width != first.width) {
      throw InvalidArgument("assemble_orbit_tensor: map " + std::to_string(i) +
                            " shape differs from map 0");
    }
    if (m.data.size() != m.size()) {
      throw DimensionMismatch("assemble_orbit_tensor: map data length", m.data.size(), m.size());
    }
    data.insert(data.end(), m.data.begin(), m.data.end());
  }
  return FeatureOrbitTensor(TensorShape{n_rot, n_scale, first.channels, first.height, first.width},
                            std::move(data), presence);
}

}  // namespace orbitpool
