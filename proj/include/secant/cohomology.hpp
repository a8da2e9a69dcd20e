#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secant/linalg.hpp"
#include "secant/scheme.hpp"
#include "secant/space.hpp"

namespace secant {

class RankCache;

// Interpolation matrix of a zero-dimensional scheme: one row per condition
// (evaluation, then one partial derivative per kept tangent direction, in
// factor order), one column per monomial of the multidegree. Columns are
// ordered degree-lexicographically inside each factor, first factor
// slowest. Entries are reduced mod f.p.
DenseMatrix build_matrix(const SchemeSpec& scheme, const SampledPoints& points, PrimeField f);

struct RankRun {
  uint32_t prime;
  uint64_t seed;
  long long rank;
};

struct RankPolicy {
  int trials = 3;
  std::vector<uint32_t> primes{kDefaultPrime, kSecondPrime};
  uint64_t seed = kDefaultSeed;
  RankCache* cache = nullptr;
};

// Derived per-trial sampling seed, shared by certificate replays.
uint64_t trial_seed(uint64_t base, int trial);

struct CohomologyReport {
  long long sections = 0;      // h0 of the line bundle
  long long scheme_degree = 0;
  long long rank = 0;          // best rank over all runs
  long long h0 = 0;            // sections - rank
  long long h1 = 0;            // scheme_degree - rank
  bool certified = false;      // rank == min(sections, scheme_degree)
  uint32_t certifying_prime = 0;
  uint64_t certifying_seed = 0;
  std::vector<RankRun> runs;
};

// Max rank over sampled specializations (a lower bound for the generic
// rank, so certified reports are exact). Stops at the first run reaching
// min(sections, degree); a certified cache hit skips computation.
CohomologyReport cohomology(const SchemeSpec& scheme, const RankPolicy& policy = {});

enum class DefectStatus { NotDefectiveCertified, ProbablyDefective, Inconclusive };

struct DefectivityVerdict {
  long long z = 0;
  DefectStatus status = DefectStatus::Inconclusive;
  long long defect = 0;  // expected rank minus observed, when probably defective
  std::optional<CohomologyReport> report;  // present for the z actually computed
};

// One verdict per z. Certified h1 = 0 propagates to smaller z and
// certified h0 = 0 to larger z, so only ranks near N/(dim+1) are computed.
// ProbablyDefective requires the same deficient rank from >= 2 primes and
// >= 3 seeds; anything weaker stays Inconclusive.
std::vector<DefectivityVerdict> defect_scan(
    const SegreVeronesePair& pair, const RankPolicy& policy = {},
    std::optional<std::pair<long long, long long>> z_range = std::nullopt);

// True when sigma_s is certified regular: rank = min(N, s(dim+1)).
bool not_s_defective(const SegreVeronesePair& pair, long long s, const RankPolicy& policy = {});

// Certified non-defectivity for every z via the two critical ranks.
bool not_secant_defective(const SegreVeronesePair& pair, const RankPolicy& policy = {});

struct LemmaReport {
  std::string lemma_id;
  bool hypotheses_hold = false;
  bool conclusion_holds = false;
  std::map<std::string, long long> values;
};

// Checks one concrete instance of the product-induction lemmas on
// X = base x P^1 or base x P^2. Supported ids: a1a, a1c, a3a, a3b
// (params z and, for a3*, u), a5_0 (no params), a1_2 (param z).
// hypotheses_hold evaluates the stated side conditions exactly (numeric
// non-defectivity of the base is certified by rank checks);
// conclusion_holds certifies the asserted vanishing or bound.
LemmaReport verify_lemma_instance(const std::string& lemma_id, const SegreVeronesePair& base,
                                  const std::map<std::string, long long>& params,
                                  const RankPolicy& policy = {});

}  // namespace secant
