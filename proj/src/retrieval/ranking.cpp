#include "orbitpool/retrieval/ranking.hpp"

#include <algorithm>
#include <unordered_set>

#include "orbitpool/error.hpp"

namespace orbitpool {

RankedList rank_by_distance(const std::string& query_id, std::vector<RankedEntry> candidates,
                            const RankRules& rules) {
  std::erase_if(candidates, [&](const RankedEntry& e) {
    return rules.junk.contains(e.id) ||
           (rules.protocol == Protocol::standard && e.id == query_id);
  });
  std::sort(candidates.begin(), candidates.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.id < b.id;
  });
  std::unordered_set<std::string_view> seen;
  for (const RankedEntry& e : candidates) {
    if (!seen.insert(e.id).second) throw InvalidArgument("rank: duplicate index id \"" + e.id + "\"");
  }
  return RankedList{query_id, std::move(candidates)};
}

RankedList rank(const std::string& query_id, const RankQuery& query, const SearchIndex& index,
                const RankRules& rules) {
  std::vector<RankedEntry> candidates;
  if (const auto* q = std::get_if<Descriptor>(&query)) {
    const auto* items = std::get_if<std::vector<NamedDescriptor>>(&index);
    if (items == nullptr) throw InvalidArgument("rank: float descriptor query against a hash index");
    const Descriptor qn = l2_normalize(*q);
    candidates.reserve(items->size());
    for (const NamedDescriptor& item : *items) {
      const double d = item.descriptor.normalized ? euclidean_distance(qn, item.descriptor)
                                                  : euclidean_distance(qn, l2_normalize(item.descriptor));
      candidates.push_back({item.id, d});
    }
  } else {
    const auto& h = std::get<BinaryHash>(query);
    const auto* hashes = std::get_if<HashIndex>(&index);
    if (hashes == nullptr) throw InvalidArgument("rank: hash query against a float descriptor index");
    candidates.reserve(hashes->entries.size());
    for (const HashEntry& item : hashes->entries) {
      candidates.push_back({item.id, static_cast<double>(hamming_distance(h, item.hash))});
    }
  }
  return rank_by_distance(query_id, std::move(candidates), rules);
}

}  // namespace orbitpool
