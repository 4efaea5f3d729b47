#include "orbitpool/retrieval/distance_report.hpp"

#include <cstdio>

#include "orbitpool/core/descriptor.hpp"
#include "orbitpool/pooling/pooling.hpp"

namespace orbitpool {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<DistanceRow> pairwise_distance_report(const std::string& pair_id,
                                                  const FeatureOrbitTensor& a,
                                                  const FeatureOrbitTensor& b,
                                                  std::span<const PoolingSequence> sequences) {
  std::vector<DistanceRow> rows;
  rows.reserve(sequences.size());
  for (const PoolingSequence& seq : sequences) {
    const Descriptor da = l2_normalize(apply_sequence(a, seq));
    const Descriptor db = l2_normalize(apply_sequence(b, seq));
    rows.push_back({pair_id, seq.empty() ? std::string("raw") : seq.str(), euclidean_distance(da, db)});
  }
  return rows;
}

std::string distance_report_csv(std::span<const DistanceRow> rows) {
  std::string out = "pair_id,sequence,distance\n";
  char buf[64];
  for (const DistanceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9g", r.distance);
    out += csv_field(r.pair_id) + ',' + csv_field(r.sequence) + ',' + buf + '\n';
  }
  return out;
}

}  // namespace orbitpool
