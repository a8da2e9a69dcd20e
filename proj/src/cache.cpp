#include "secant/cache.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numeric>

#include <json.hpp>

namespace secant {

using nlohmann::json;

// Factor count of a scheme made of plain double points, 0 otherwise.
static long long plain_z(const SchemeSpec& s) {
  for (const SchemeComponent& c : s.components) {
    if (c.multiplicity != 2) return 0;
    for (Constraint k : c.constraints)
      if (k != Constraint::Full) return 0;
  }
  return (long long)s.components.size();
}

std::string RankCache::key_scheme(const SchemeSpec& scheme) {
  const SegreVeronesePair& p = scheme.pair;
  std::vector<int> idx(p.factor_count());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::pair(p.factor_dims[a], p.multidegree[a]) >
           std::pair(p.factor_dims[b], p.multidegree[b]);
  });
  std::vector<int> dims, degs;
  for (int i : idx) {
    dims.push_back(p.factor_dims[i]);
    degs.push_back(p.multidegree[i]);
  }
  SchemeSpec permuted{SegreVeronesePair(dims, degs), scheme.components};
  for (SchemeComponent& c : permuted.components) {
    std::vector<Constraint> cs(c.constraints.size());
    for (size_t j = 0; j < cs.size(); ++j) cs[j] = c.constraints[idx[j]];
    c.constraints = std::move(cs);
  }
  return permuted.descriptor();
}

static std::string now_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RankCache::RankCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("pair") || !j.contains("scheme") ||
        !j.contains("prime") || !j.contains("rank")) {
      std::cerr << "rank cache " << path_ << ":" << lineno << ": skipping malformed entry\n";
      continue;
    }
    try {
      CacheEntry e;
      e.pair = j.at("pair").get<std::string>();
      e.scheme = j.at("scheme").get<std::string>();
      e.z = j.value("z", 0LL);
      e.prime = j.at("prime").get<uint32_t>();
      e.seed = j.value("seed", 0ULL);
      e.rank = j.at("rank").get<long long>();
      e.certified = j.value("certified", false);
      e.ts = j.value("ts", "");
      entries_.push_back(std::move(e));
    } catch (const json::exception&) {
      std::cerr << "rank cache " << path_ << ":" << lineno << ": skipping malformed entry\n";
    }
  }
}

std::optional<CacheEntry> RankCache::get(const SchemeSpec& scheme, uint32_t prime) const {
  const std::string pk = scheme.pair.canonical_key();
  const std::string sk = key_scheme(scheme);
  std::lock_guard lock(mu_);
  const CacheEntry* best = nullptr;
  for (const CacheEntry& e : entries_)
    if (e.prime == prime && e.pair == pk && e.scheme == sk)
      if (!best || e.rank > best->rank || (e.rank == best->rank && e.certified && !best->certified))
        best = &e;
  if (!best) return std::nullopt;
  return *best;
}

void RankCache::put(const SchemeSpec& scheme, uint32_t prime, uint64_t seed, long long rank,
                    bool certified) {
  CacheEntry e;
  e.pair = scheme.pair.canonical_key();
  e.scheme = key_scheme(scheme);
  e.z = plain_z(scheme);
  e.prime = prime;
  e.seed = seed;
  e.rank = rank;
  e.certified = certified;
  e.ts = now_utc();
  json j{{"pair", e.pair},   {"scheme", e.scheme},       {"z", e.z},   {"prime", e.prime},
         {"seed", e.seed},   {"rank", e.rank},           {"certified", e.certified},
         {"ts", e.ts}};
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::app);
  if (out)
    out << j.dump() << '\n';
  else
    std::cerr << "rank cache " << path_ << ": cannot append\n";
  entries_.push_back(std::move(e));
}

std::size_t RankCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace secant
