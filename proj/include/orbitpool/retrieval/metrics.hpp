#pragma once

#include <map>
#include <set>
#include <span>
#include <string>

#include "orbitpool/retrieval/manifest.hpp"
#include "orbitpool/retrieval/ranking.hpp"

namespace orbitpool {

/// Non-interpolated average precision over the full ranking: the mean of
/// precision@k at each relevant hit, divided by |relevant| so relevant ids
/// missing from the ranking count as 0. Throws on an empty relevant set.
double average_precision(const RankedList& ranking, const std::set<std::string>& relevant);

/// Per-query scores and their unweighted mean (queries visited in id order).
struct MetricResult {
  double value = 0.0;
  std::map<std::string, double> per_query;
};

MetricResult evaluate_map(std::span<const RankedList> lists, const DatasetManifest& manifest);
double mean_average_precision(std::span<const RankedList> lists, const DatasetManifest& manifest);

/// UKBench score: mean count of relevant ids in the top 4, in [0, 4].
/// Throws InvalidArgument unless the manifest uses the ukb protocol.
MetricResult evaluate_recall4(std::span<const RankedList> lists, const DatasetManifest& manifest);
double recall4_times4(std::span<const RankedList> lists, const DatasetManifest& manifest);

}  // namespace orbitpool
