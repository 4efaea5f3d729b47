#include "orbitpool/retrieval/metrics.hpp"

#include <algorithm>

#include "orbitpool/error.hpp"

namespace orbitpool {

namespace {

const GroundTruth& truth_for(const DatasetManifest& manifest, const std::string& qid) {
  auto it = manifest.ground_truth.find(qid);
  if (it == manifest.ground_truth.end()) {
    throw InvalidArgument("metrics: no ground truth for query \"" + qid + "\"");
  }
  return it->second;
}

template <class Score>
MetricResult evaluate(std::span<const RankedList> lists, const DatasetManifest& manifest,
                      Score score) {
  if (lists.empty()) throw InvalidArgument("metrics: no rankings to evaluate");
  MetricResult result;
  for (const RankedList& list : lists) {
    if (!result.per_query.emplace(list.query_id, score(list, truth_for(manifest, list.query_id))).second) {
      throw InvalidArgument("metrics: query \"" + list.query_id + "\" ranked twice");
    }
  }
  double sum = 0.0;
  for (const auto& [qid, v] : result.per_query) sum += v;
  result.value = sum / static_cast<double>(result.per_query.size());
  return result;
}

}  // namespace

double average_precision(const RankedList& ranking, const std::set<std::string>& relevant) {
  if (relevant.empty()) {
    throw InvalidArgument("average_precision: empty relevant set for query \"" + ranking.query_id + "\"");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < ranking.entries.size(); ++k) {
    if (relevant.contains(ranking.entries[k].id)) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

MetricResult evaluate_map(std::span<const RankedList> lists, const DatasetManifest& manifest) {
  return evaluate(lists, manifest, [](const RankedList& list, const GroundTruth& gt) {
    return average_precision(list, gt.relevant);
  });
}

double mean_average_precision(std::span<const RankedList> lists, const DatasetManifest& manifest) {
  return evaluate_map(lists, manifest).value;
}

MetricResult evaluate_recall4(std::span<const RankedList> lists, const DatasetManifest& manifest) {
  if (manifest.protocol != Protocol::ukb) {
    throw InvalidArgument("recall4x4 requires the ukb protocol, manifest uses \"" +
                          std::string(to_string(manifest.protocol)) + "\"");
  }
  return evaluate(lists, manifest, [](const RankedList& list, const GroundTruth& gt) {
    const std::size_t top = std::min<std::size_t>(4, list.entries.size());
    std::size_t found = 0;
    for (std::size_t k = 0; k < top; ++k) found += gt.relevant.contains(list.entries[k].id) ? 1 : 0;
    return static_cast<double>(found);
  });
}

double recall4_times4(std::span<const RankedList> lists, const DatasetManifest& manifest) {
  return evaluate_recall4(lists, manifest).value;
}

}  // namespace orbitpool
