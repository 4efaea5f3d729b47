#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "orbitpool/core/binary_hash.hpp"
#include "orbitpool/core/descriptor.hpp"
#include "orbitpool/hashing/hash_file.hpp"
#include "orbitpool/pooling/descriptor_file.hpp"
#include "orbitpool/retrieval/manifest.hpp"

namespace orbitpool {

struct RankedEntry {
  std::string id;
  double distance;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Database ids in ascending distance; ids unique, junk already removed.
struct RankedList {
  std::string query_id;
  std::vector<RankedEntry> entries;
};

struct RankRules {
  Protocol protocol = Protocol::standard;
  std::set<std::string> junk;
};

/// Sorts candidates by (distance, id), drops junk ids and, under the
/// standard protocol, the query's own id.
RankedList rank_by_distance(const std::string& query_id, std::vector<RankedEntry> candidates,
                            const RankRules& rules);

using RankQuery = std::variant<Descriptor, BinaryHash>;
using SearchIndex = std::variant<std::vector<NamedDescriptor>, HashIndex>;

/// Float descriptors are compared by Euclidean distance after L2
/// normalization of both sides (index entries already flagged normalized
/// are used as stored); hashes by Hamming distance. A float query
/// against a hash index (or the reverse) throws InvalidArgument.
RankedList rank(const std::string& query_id, const RankQuery& query, const SearchIndex& index,
                const RankRules& rules);

}  // namespace orbitpool
