#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "secant/scheme.hpp"

namespace secant {

struct CacheEntry {
  std::string pair;    // canonical pair key
  std::string scheme;  // descriptor, factor indices in canonical order
  long long z = 0;     // double-point count, 0 for constrained schemes
  uint32_t prime = 0;
  uint64_t seed = 0;
  long long rank = 0;
  bool certified = false;
  std::string ts;
};

// Append-only JSONL store of computed ranks, keyed by (pair, scheme, z,
// prime). Lookups ignore the seed and return the entry with the highest
// rank. Malformed lines are skipped with a warning on load. put() appends
// to the file immediately; safe for concurrent use within one process.
class RankCache {
 public:
  explicit RankCache(std::string path);

  std::optional<CacheEntry> get(const SchemeSpec& scheme, uint32_t prime) const;
  void put(const SchemeSpec& scheme, uint32_t prime, uint64_t seed, long long rank,
           bool certified);
  std::size_t size() const;

  // Canonical scheme key: factors sorted like canonical_key, component
  // constraints permuted along with them.
  static std::string key_scheme(const SchemeSpec& scheme);

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::vector<CacheEntry> entries_;
};

}  // namespace secant
