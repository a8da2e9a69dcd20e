#include "secant/cohomology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "secant/cache.hpp"
#include "secant/claims.hpp"

namespace secant {

// All monomials of total degree d in n+1 variables, lexicographically
// descending on the exponent tuple; matches the column order contract.
static void enum_monomials(int vars_left, int d, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
  if (vars_left == 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur.push_back(e);
    enum_monomials(vars_left - 1, d - e, cur, out);
    cur.pop_back();
  }
}

static std::vector<std::vector<int>> factor_monomials(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enum_monomials(n + 1, d, cur, out);
  return out;
}

// acc <- acc (x) v, factor blocks ordered first factor slowest.
static void kron_in_place(std::vector<uint32_t>& acc, const std::vector<uint32_t>& v,
                          PrimeField f) {
  std::vector<uint32_t> out(acc.size() * v.size());
  size_t w = 0;
  for (uint32_t a : acc)
    for (uint32_t b : v) out[w++] = f.mul(a, b);
  acc = std::move(out);
}

// Tangent directions kept at one factor of a double point.
static int kept_directions(Constraint c, int n) {
  switch (c) {
    case Constraint::Full:
    case Constraint::OnHyperplane:
      return n;
    case Constraint::Hyperplane:
      return n - 1;
    case Constraint::FixedPoint:
      return 0;
  }
  return 0;
}

DenseMatrix build_matrix(const SchemeSpec& scheme, const SampledPoints& points, PrimeField f) {
  const SegreVeronesePair& pair = scheme.pair;
  const int k = pair.factor_count();
  if (points.coords.size() != scheme.components.size())
    throw std::invalid_argument("sampled points do not match the scheme");

  std::vector<std::vector<std::vector<int>>> mons(k);
  for (int i = 0; i < k; ++i)
    mons[i] = factor_monomials(pair.factor_dims[i], pair.multidegree[i]);

  const long long cols = pair.sections();
  const long long rows = scheme.total_degree();
  DenseMatrix m((int)rows, (int)cols);

  std::vector<long long> row_off(scheme.components.size() + 1, 0);
  for (size_t c = 0; c < scheme.components.size(); ++c)
    row_off[c + 1] = row_off[c] + scheme.components[c].degree(pair);

#pragma omp parallel for schedule(dynamic)
  for (size_t c = 0; c < scheme.components.size(); ++c) {
    const SchemeComponent& comp = scheme.components[c];
    const auto& pt = points.coords[c];

    // Per factor: evaluated monomials and, for double points, the partial
    // derivative in each kept direction.
    std::vector<std::vector<uint32_t>> vals(k);
    std::vector<std::vector<std::vector<uint32_t>>> ders(k);
    for (int i = 0; i < k; ++i) {
      const int n = pair.factor_dims[i];
      const int d = pair.multidegree[i];
      std::vector<std::vector<uint32_t>> pw(n + 1, std::vector<uint32_t>(d + 1, 1));
      for (int j = 0; j <= n; ++j)
        for (int e = 1; e <= d; ++e) pw[j][e] = f.mul(pw[j][e - 1], pt[i][j]);

      vals[i].resize(mons[i].size());
      for (size_t a = 0; a < mons[i].size(); ++a) {
        uint32_t v = 1;
        for (int j = 0; j <= n; ++j) v = f.mul(v, pw[j][mons[i][a][j]]);
        vals[i][a] = v;
      }
      if (comp.multiplicity == 2) {
        const int dirs = kept_directions(comp.constraints[i], n);
        ders[i].assign(dirs, std::vector<uint32_t>(mons[i].size()));
        for (int t = 1; t <= dirs; ++t)
          for (size_t a = 0; a < mons[i].size(); ++a) {
            const int e = mons[i][a][t];
            if (e == 0) {
              ders[i][t - 1][a] = 0;
              continue;
            }
            uint32_t v = f.reduce(e);
            for (int j = 0; j <= n; ++j)
              v = f.mul(v, pw[j][j == t ? e - 1 : mons[i][a][j]]);
            ders[i][t - 1][a] = v;
          }
      }
    }

    long long row = row_off[c];
    auto emit = [&](int der_factor, int der_dir) {
      std::vector<uint32_t> acc{1};
      for (int i = 0; i < k; ++i)
        kron_in_place(acc, i == der_factor ? ders[i][der_dir] : vals[i], f);
      std::copy(acc.begin(), acc.end(), m.row((int)row));
      ++row;
    };
    emit(-1, 0);
    if (comp.multiplicity == 2)
      for (int i = 0; i < k; ++i)
        for (int t = 0; t < kept_directions(comp.constraints[i], pair.factor_dims[i]); ++t)
          emit(i, t);
  }
  return m;
}

uint64_t trial_seed(uint64_t base, int trial) {
  uint64_t x = base + 0x9e3779b97f4a7c15ull * (uint64_t)(trial + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

CohomologyReport cohomology(const SchemeSpec& scheme, const RankPolicy& policy) {
  CohomologyReport rep;
  rep.sections = scheme.pair.sections();
  rep.scheme_degree = scheme.total_degree();
  const long long target = std::min(rep.sections, rep.scheme_degree);

  auto finalize = [&](long long rk, bool cert, uint32_t prime, uint64_t seed) {
    rep.rank = rk;
    rep.h0 = rep.sections - rk;
    rep.h1 = rep.scheme_degree - rk;
    rep.certified = cert;
    if (cert) {
      rep.certifying_prime = prime;
      rep.certifying_seed = seed;
    }
  };

  if (policy.cache)
    for (uint32_t prime : policy.primes)
      if (auto e = policy.cache->get(scheme, prime); e && e->rank <= target) {
        rep.runs.push_back({prime, e->seed, e->rank});
        if (e->certified && e->rank == target) {
          finalize(e->rank, true, prime, e->seed);
          return rep;
        }
      }

  auto seen = [&](uint32_t prime, uint64_t seed) {
    for (const RankRun& r : rep.runs)
      if (r.prime == prime && r.seed == seed) return true;
    return false;
  };

  for (int trial = 0; trial < policy.trials; ++trial) {
    const uint64_t seed = trial_seed(policy.seed, trial);
    for (uint32_t prime : policy.primes) {
      if (seen(prime, seed)) continue;
      PrimeField f(prime);
      SampledPoints pts = sample_points(scheme, seed, f);
      long long rk = rank(build_matrix(scheme, pts, f), f);
      rep.runs.push_back({prime, seed, rk});
      if (policy.cache) policy.cache->put(scheme, prime, seed, rk, rk == target);
      if (rk == target) {
        finalize(rk, true, prime, seed);
        return rep;
      }
    }
  }

  long long best = 0;
  for (const RankRun& r : rep.runs) best = std::max(best, r.rank);
  finalize(best, best == target, 0, 0);
  return rep;
}

// Same deficient rank from every run, with enough independent evidence.
static bool deficiency_agreed(const CohomologyReport& rep) {
  if (rep.runs.empty()) return false;
  std::set<uint32_t> primes;
  std::set<uint64_t> seeds;
  for (const RankRun& r : rep.runs) {
    if (r.rank != rep.rank) return false;
    primes.insert(r.prime);
    seeds.insert(r.seed);
  }
  return primes.size() >= 2 && seeds.size() >= 3;
}

static DefectivityVerdict classify(long long z, CohomologyReport rep) {
  DefectivityVerdict v;
  v.z = z;
  if (rep.certified) {
    v.status = DefectStatus::NotDefectiveCertified;
  } else if (deficiency_agreed(rep)) {
    v.status = DefectStatus::ProbablyDefective;
    v.defect = std::min(rep.sections, rep.scheme_degree) - rep.rank;
  } else {
    v.status = DefectStatus::Inconclusive;
  }
  v.report = std::move(rep);
  return v;
}

std::vector<DefectivityVerdict> defect_scan(
    const SegreVeronesePair& pair, const RankPolicy& policy,
    std::optional<std::pair<long long, long long>> z_range) {
  const CriticalRanks crit = critical_z(pair);
  long long lo = 1, hi = std::max<long long>(crit.z_hi, 1);
  if (z_range) {
    lo = z_range->first;
    hi = z_range->second;
  }
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad z range");

  // Ranks at the critical z settle every other z by semicontinuity.
  std::vector<DefectivityVerdict> critical;
  for (long long z : {crit.z_lo, crit.z_hi}) {
    if (z < 1) continue;
    if (!critical.empty() && critical.back().z == z) continue;
    critical.push_back(classify(z, cohomology(double_points(pair, z), policy)));
  }
  long long h1_zero_up_to = -1, h0_zero_from = -1;
  for (const DefectivityVerdict& v : critical) {
    const CohomologyReport& r = *v.report;
    if (r.certified && r.h1 == 0) h1_zero_up_to = std::max(h1_zero_up_to, v.z);
    if (r.certified && r.h0 == 0 && (h0_zero_from < 0 || v.z < h0_zero_from)) h0_zero_from = v.z;
  }

  std::vector<DefectivityVerdict> out((size_t)(hi - lo + 1));
  std::vector<long long> pending;
  for (long long z = lo; z <= hi; ++z) {
    DefectivityVerdict* direct = nullptr;
    for (DefectivityVerdict& v : critical)
      if (v.z == z) direct = &v;
    if (direct) {
      out[(size_t)(z - lo)] = *direct;
    } else if (z <= h1_zero_up_to || (h0_zero_from >= 0 && z >= h0_zero_from)) {
      DefectivityVerdict v;
      v.z = z;
      v.status = DefectStatus::NotDefectiveCertified;
      out[(size_t)(z - lo)] = v;
    } else {
      pending.push_back(z);
    }
  }
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < pending.size(); ++i) {
    long long z = pending[i];
    out[(size_t)(z - lo)] = classify(z, cohomology(double_points(pair, z), policy));
  }
  return out;
}

bool not_s_defective(const SegreVeronesePair& pair, long long s, const RankPolicy& policy) {
  if (s <= 0) return true;
  return cohomology(double_points(pair, s), policy).certified;
}

bool not_secant_defective(const SegreVeronesePair& pair, const RankPolicy& policy) {
  const CriticalRanks crit = critical_z(pair);
  return not_s_defective(pair, crit.z_lo, policy) && not_s_defective(pair, crit.z_hi, policy);
}

// base x P^e with the last degree dlast appended.
static SegreVeronesePair extend(const SegreVeronesePair& base, int e, int dlast) {
  std::vector<int> dims = base.factor_dims;
  std::vector<int> degs = base.multidegree;
  dims.push_back(e);
  degs.push_back(dlast);
  return SegreVeronesePair(dims, degs);
}

// z generic double points plus u doubled with respect to the hyperplane
// of the last factor.
static SchemeSpec mixed_scheme(const SegreVeronesePair& x, long long z, long long u) {
  std::vector<ComponentGroup> groups;
  if (z > 0) groups.push_back({z, 2, {}});
  if (u > 0) {
    std::vector<Constraint> cs(x.factor_count(), Constraint::Full);
    cs.back() = Constraint::Hyperplane;
    groups.push_back({u, 2, cs});
  }
  return make_scheme(x, groups);
}

LemmaReport verify_lemma_instance(const std::string& lemma_id, const SegreVeronesePair& base,
                                  const std::map<std::string, long long>& params,
                                  const RankPolicy& policy) {
  auto param = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument(std::string("lemma ") + lemma_id + " needs parameter " + key);
    return it->second;
  };

  LemmaReport rep;
  rep.lemma_id = lemma_id;
  const long long alpha = base.sections();
  const long long r = base.dim();
  rep.values["alpha"] = alpha;
  rep.values["r"] = r;

  SchemeSpec scheme = double_points(base, 1);  // placeholder, reassigned below
  bool hyps = false;
  enum class Goal { H1Zero, H0Zero, H0Bound } goal = Goal::H1Zero;
  long long h0_bound = 0;

  if (lemma_id == "a1a" || lemma_id == "a1c") {
    const long long z = param("z");
    rep.values["z"] = z;
    const SegreVeronesePair x = extend(base, 1, 1);
    scheme = double_points(x, z);
    if (lemma_id == "a1a") {
      const long long m = alpha / (r + 2);
      rep.values["m"] = m;
      hyps = z >= 0 && z <= 2 * m && not_s_defective(base, m, policy);
      goal = Goal::H1Zero;
    } else {
      const long long m = (alpha + r + 1) / (r + 2);
      rep.values["m"] = m;
      hyps = z >= 2 * m && not_s_defective(base, m, policy);
      goal = Goal::H0Zero;
    }
  } else if (lemma_id == "a3a" || lemma_id == "a3b") {
    const long long z = param("z");
    const long long u = param("u");
    rep.values["z"] = z;
    rep.values["u"] = u;
    const SegreVeronesePair x = extend(base, 2, 1);
    scheme = mixed_scheme(x, z, u);
    if (lemma_id == "a3a") {
      const long long m = alpha / (r + 2);
      rep.values["m"] = m;
      hyps = z >= 0 && u >= 0 && (r + 2) * z <= 2 * alpha - 2 * r - 2 &&
             (r + 2) * z + u <= 2 * alpha && u <= alpha / (r + 1) && z <= alpha - (r + 1) * u &&
             not_s_defective(base, z, policy) && not_s_defective(base, u, policy) &&
             not_s_defective(base, m, policy);
      goal = Goal::H1Zero;
    } else {
      const long long m = (alpha + r + 1) / (r + 2);
      rep.values["m"] = m;
      hyps = z >= 0 && u >= 0 && (r + 2) * z >= 2 * alpha + 2 * r + 2 &&
             (u >= (alpha + r) / (r + 1) || z >= alpha - (r + 1) * u) &&
             not_s_defective(base, u, policy) && not_s_defective(base, m, policy);
      goal = Goal::H0Zero;
    }
  } else if (lemma_id == "a5_0") {
    const long long a = 4 * alpha / (r + 2);
    const long long b = 4 * alpha - (r + 2) * a;
    const long long z = (10 * alpha + r + 2) / (r + 3);
    const long long zp = z - a - b;
    rep.values["a"] = a;
    rep.values["b"] = b;
    rep.values["z"] = z;
    rep.values["z_residual"] = zp;
    const SegreVeronesePair x = extend(base, 2, 2);
    scheme = mixed_scheme(x, zp, b);
    hyps = zp >= 0 && alpha >= a4_threshold(r) && not_secant_defective(base, policy);
    goal = Goal::H1Zero;
  } else if (lemma_id == "a1_2") {
    const long long z = param("z");
    rep.values["z"] = z;
    const SegreVeronesePair x = extend(base, 2, 1);
    scheme = double_points(x, z);
    h0_bound = std::max<long long>(0, 3 * alpha - (r + 2) * z);
    rep.values["bound"] = h0_bound;
    hyps = z >= 0;
    goal = Goal::H0Bound;
  } else {
    throw std::invalid_argument("unknown lemma id: " + lemma_id);
  }

  rep.hypotheses_hold = hyps;
  const CohomologyReport c = cohomology(scheme, policy);
  rep.values["sections"] = c.sections;
  rep.values["degree"] = c.scheme_degree;
  rep.values["rank"] = c.rank;
  rep.values["h0"] = c.h0;
  rep.values["h1"] = c.h1;
  rep.values["certified"] = c.certified ? 1 : 0;
  switch (goal) {
    case Goal::H1Zero:
      rep.conclusion_holds = c.certified && c.h1 == 0;
      break;
    case Goal::H0Zero:
      rep.conclusion_holds = c.certified && c.h0 == 0;
      break;
    case Goal::H0Bound:
      // Sampling only raises h0, so the observed value bounds the generic one.
      rep.conclusion_holds = c.h0 <= h0_bound;
      break;
  }
  return rep;
}

}  // namespace secant
