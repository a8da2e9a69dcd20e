#include "secant/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "secant/claims.hpp"

namespace secant {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotDefective:
      return "NOT_DEFECTIVE";
    case Verdict::Defective:
      return "DEFECTIVE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::DbLookup:
      return "DB_LOOKUP";
    case Rule::NumericCheck:
      return "NUMERIC_CHECK";
    case Rule::RuleA41:
      return "RULE_A41";
    case Rule::RuleA5:
      return "RULE_A5";
    case Rule::RuleP1OrP2:
      return "RULE_P1ORP2";
    case Rule::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_from_name(const std::string& s) {
  if (s == "NOT_DEFECTIVE") return Verdict::NotDefective;
  if (s == "DEFECTIVE") return Verdict::Defective;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  throw std::invalid_argument("unknown verdict: " + s);
}

Rule rule_from_name(const std::string& s) {
  if (s == "DB_LOOKUP") return Rule::DbLookup;
  if (s == "NUMERIC_CHECK") return Rule::NumericCheck;
  if (s == "RULE_A41") return Rule::RuleA41;
  if (s == "RULE_A5") return Rule::RuleA5;
  if (s == "RULE_P1ORP2") return Rule::RuleP1OrP2;
  if (s == "INCONCLUSIVE") return Rule::Inconclusive;
  throw std::invalid_argument("unknown rule: " + s);
}

std::optional<KnownFact> lookup_known(const SegreVeronesePair& pair) {
  for (int d : pair.multidegree)
    if (d < 1) return std::nullopt;

  // Sorted (n_i, d_i): classifications do not care about factor order.
  std::vector<std::pair<int, int>> f;
  for (int i = 0; i < pair.factor_count(); ++i)
    f.emplace_back(pair.factor_dims[i], pair.multidegree[i]);
  std::sort(f.begin(), f.end(), std::greater<>());
  const int k = (int)f.size();

  std::vector<KnownFact> hits;

  if (k == 1) {
    const int n = f[0].first, d = f[0].second;
    const bool defective = (d == 2 && n >= 2) || (n == 2 && d == 4) || (n == 3 && d == 4) ||
                           (n == 4 && d == 3) || (n == 4 && d == 4);
    hits.push_back({defective ? Verdict::Defective : Verdict::NotDefective,
                    "AlexanderHirschowitz", defective ? "defective Veronese pair" : ""});
  }

  const bool all_p1 = std::all_of(f.begin(), f.end(), [](auto& p) { return p.first == 1; });
  const bool degs_ge2 = std::all_of(f.begin(), f.end(), [](auto& p) { return p.second >= 2; });
  if (k >= 2 && all_p1 && degs_ge2) {
    bool defective = false;
    if (k == 2) defective = f[1].second == 2 && f[0].second % 2 == 0;
    if (k == 3) defective = f[0].second == 2 && f[1].second == 2 && f[2].second == 2;
    hits.push_back({defective ? Verdict::Defective : Verdict::NotDefective, "LafacePostinghel",
                    defective ? "defective product of lines" : ""});
  }

  if (k == 2 && f[0].second >= 3 && f[1].second >= 3)
    hits.push_back({Verdict::NotDefective, "GaluppiOneto", ""});

  if (k == 2 && f[0].first == 2 && f[1].first == 1 && f[0].second >= 2 && f[1].second >= 2) {
    const bool defective = f[0].second == 2 && f[1].second % 2 == 0;
    hits.push_back({defective ? Verdict::Defective : Verdict::NotDefective, "BaurDraisma",
                    defective ? "curve-times-plane defective pair" : ""});
  }

  const std::vector<std::pair<int, int>> cgg1{{2, 2}, {2, 2}};
  const std::vector<std::pair<int, int>> cgg2{{2, 2}, {1, 2}, {1, 2}};
  if (f == cgg1 || f == cgg2)
    hits.push_back(
        {Verdict::Defective, "CatalisanoGeramitaGimigliano", "sporadic defective product"});

  if (hits.empty()) return std::nullopt;
  for (const KnownFact& h : hits)
    if (h.verdict != hits.front().verdict)
      throw std::logic_error("classification database disagrees on " + pair.to_string());
  return hits.front();
}

nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["version"] = cert.version;
  j["pair"] = {{"factors", cert.pair.factor_dims}, {"degrees", cert.pair.multidegree}};
  j["verdict"] = verdict_name(cert.verdict);
  j["rule"] = rule_name(cert.rule);
  j["hypotheses"] = cert.hypotheses;
  j["seeds"] = cert.seeds;
  j["prime"] = cert.prime;
  j["children"] = nlohmann::json::array();
  for (const Certificate& c : cert.children) j["children"].push_back(certificate_to_json(c));
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("certificate must be a JSON object");
  for (const char* key : {"version", "pair", "verdict", "rule"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("certificate lacks field: ") + key);
  const nlohmann::json& p = j.at("pair");
  if (!p.is_object() || !p.contains("factors") || !p.contains("degrees"))
    throw std::invalid_argument("certificate pair needs factors and degrees");
  Certificate cert(SegreVeronesePair(p.at("factors").get<std::vector<int>>(),
                                     p.at("degrees").get<std::vector<int>>()));
  cert.version = j.at("version").get<std::string>();
  cert.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  cert.rule = rule_from_name(j.at("rule").get<std::string>());
  cert.hypotheses = j.value("hypotheses", nlohmann::json::object());
  if (!cert.hypotheses.is_object())
    throw std::invalid_argument("certificate hypotheses must be an object");
  cert.seeds = j.value("seeds", std::vector<uint64_t>{});
  cert.prime = j.value("prime", 0u);
  if (j.contains("children"))
    for (const nlohmann::json& c : j.at("children"))
      cert.children.push_back(certificate_from_json(c));
  return cert;
}

static SegreVeronesePair remove_factor(const SegreVeronesePair& pair, int i) {
  std::vector<int> dims = pair.factor_dims;
  std::vector<int> degs = pair.multidegree;
  dims.erase(dims.begin() + i);
  degs.erase(degs.begin() + i);
  return SegreVeronesePair(dims, degs);
}

// One rank replay at z double points; exact match against min(N, z(dim+1)).
static bool replay_critical_rank(const SegreVeronesePair& pair, long long z, uint64_t seed,
                                 uint32_t prime, long long* rank_out) {
  PrimeField f(prime);
  SchemeSpec scheme = double_points(pair, z);
  SampledPoints pts = sample_points(scheme, seed, f);
  const long long rk = rank(build_matrix(scheme, pts, f), f);
  *rank_out = rk;
  return rk == std::min(pair.sections(), scheme.total_degree());
}

Certificate Deriver::derive(const SegreVeronesePair& pair) {
  const std::string key = pair.canonical_key();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  Certificate cert(pair);

  if (auto fact = lookup_known(pair)) {
    cert.verdict = fact->verdict;
    cert.rule = Rule::DbLookup;
    cert.hypotheses["source"] = fact->source;
    if (!fact->detail.empty()) cert.hypotheses["detail"] = fact->detail;
    memo_.emplace(key, cert);
    return cert;
  }

  if (pair.factor_count() > 1) {
    // P2 factors first, then P1 factors, larger degrees first.
    std::vector<int> candidates;
    for (int want : {2, 1})
      for (int i = 0; i < pair.factor_count(); ++i)
        if (pair.factor_dims[i] == want && pair.multidegree[i] >= 2) candidates.push_back(i);
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      if (pair.factor_dims[a] != pair.factor_dims[b])
        return pair.factor_dims[a] > pair.factor_dims[b];
      return pair.multidegree[a] > pair.multidegree[b];
    });
    for (int i : candidates) {
      const SegreVeronesePair base = remove_factor(pair, i);
      const long long alpha = base.sections();
      const long long r = base.dim();
      const bool p2 = pair.factor_dims[i] == 2;
      if (p2 ? (r < 2 || alpha < a4_threshold(r)) : (r <= 1 || alpha <= (r + 1) * (r + 1)))
        continue;
      const Certificate child = derive(base);
      if (child.verdict != Verdict::NotDefective) continue;
      cert.verdict = Verdict::NotDefective;
      cert.rule = p2 ? Rule::RuleA5 : Rule::RuleA41;
      cert.hypotheses["t"] = pair.multidegree[i];
      cert.hypotheses["alpha"] = alpha;
      cert.hypotheses["r"] = r;
      if (p2)
        cert.hypotheses["alpha_threshold"] = a4_threshold(r);
      else
        cert.hypotheses["alpha_min"] = (r + 1) * (r + 1) + 1;
      cert.children.push_back(child);
      memo_.emplace(key, cert);
      return cert;
    }
  }

  const long long n = pair.sections();
  if (n <= opts_.numeric_budget) {
    const CriticalRanks crit = critical_z(pair);
    bool all_certified = true;
    cert.hypotheses["N"] = n;
    cert.hypotheses["z_lo"] = crit.z_lo;
    cert.hypotheses["z_hi"] = crit.z_hi;
    std::vector<std::pair<const char*, long long>> checks;
    if (crit.z_lo >= 1 && crit.z_lo != crit.z_hi) checks.emplace_back("lo", crit.z_lo);
    checks.emplace_back("hi", crit.z_hi);
    for (auto& [tag, z] : checks) {
      const CohomologyReport rep = cohomology(double_points(pair, z), opts_.policy);
      if (!rep.certified) {
        all_certified = false;
        break;
      }
      cert.hypotheses[std::string("rank_") + tag] = rep.rank;
      cert.hypotheses[std::string("seed_") + tag] = rep.certifying_seed;
      cert.hypotheses[std::string("prime_") + tag] = rep.certifying_prime;
      cert.seeds.push_back(rep.certifying_seed);
      if (!cert.prime) cert.prime = rep.certifying_prime;
    }
    if (all_certified) {
      cert.verdict = Verdict::NotDefective;
      cert.rule = Rule::NumericCheck;
      memo_.emplace(key, cert);
      return cert;
    }
    cert.hypotheses = nlohmann::json::object();
    cert.seeds.clear();
    cert.prime = 0;
  }

  cert.verdict = Verdict::Inconclusive;
  cert.rule = Rule::Inconclusive;
  cert.hypotheses["reason"] =
      n <= opts_.numeric_budget
          ? "critical ranks did not certify; defectivity is never concluded numerically"
          : "no rule applies and the pair exceeds the numeric budget";
  memo_.emplace(key, cert);
  return cert;
}

namespace {

struct Validator {
  const DeriveOptions& opts;
  std::vector<std::string> errors;

  void fail(const Certificate& cert, const std::string& msg) {
    errors.push_back(cert.pair.to_string() + ": " + msg);
  }

  template <typename T>
  bool check_recorded(const Certificate& cert, const char* key, T expect, bool required = true) {
    if (!cert.hypotheses.contains(key)) {
      if (required) fail(cert, std::string("missing hypothesis ") + key);
      return !required;
    }
    T got;
    try {
      got = cert.hypotheses.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(cert, std::string("hypothesis ") + key + " has the wrong type");
      return false;
    }
    if (got != expect) {
      fail(cert, std::string("hypothesis ") + key + " does not match the recomputed value");
      return false;
    }
    return true;
  }

  void validate(const Certificate& cert) {
    if (cert.version != "cert-v1") {
      fail(cert, "unsupported version: " + cert.version);
      return;
    }
    switch (cert.rule) {
      case Rule::DbLookup:
        validate_db(cert);
        break;
      case Rule::NumericCheck:
        validate_numeric(cert);
        break;
      case Rule::RuleA41:
      case Rule::RuleA5:
      case Rule::RuleP1OrP2:
        validate_peel(cert);
        break;
      case Rule::Inconclusive:
        fail(cert, "inconclusive certificate certifies nothing");
        break;
    }
  }

  void validate_db(const Certificate& cert) {
    const auto fact = lookup_known(cert.pair);
    if (!fact) {
      fail(cert, "no classification covers this pair");
      return;
    }
    if (fact->verdict != cert.verdict) {
      fail(cert, "verdict disagrees with the classification");
      return;
    }
    if (cert.hypotheses.contains("source") &&
        cert.hypotheses.at("source").get<std::string>() != fact->source)
      fail(cert, "recorded source does not match the classification");
    if (!cert.children.empty()) fail(cert, "database facts take no children");
  }

  void validate_numeric(const Certificate& cert) {
    if (cert.verdict != Verdict::NotDefective) {
      fail(cert, "numeric checks only certify NOT_DEFECTIVE");
      return;
    }
    if (!cert.children.empty()) fail(cert, "numeric checks take no children");
    const CriticalRanks crit = critical_z(cert.pair);
    if (!check_recorded<long long>(cert, "N", cert.pair.sections())) return;
    if (!check_recorded<long long>(cert, "z_lo", crit.z_lo)) return;
    if (!check_recorded<long long>(cert, "z_hi", crit.z_hi)) return;
    std::vector<std::pair<const char*, long long>> checks;
    if (crit.z_lo >= 1 && crit.z_lo != crit.z_hi) checks.emplace_back("lo", crit.z_lo);
    checks.emplace_back("hi", crit.z_hi);
    for (auto& [tag, z] : checks) {
      const std::string suffix = std::string("_") + tag;
      for (const char* field : {"rank", "seed", "prime"})
        if (!cert.hypotheses.contains(field + suffix)) {
          fail(cert, "missing hypothesis " + (field + suffix));
          return;
        }
      uint64_t seed;
      uint32_t prime;
      long long recorded;
      try {
        seed = cert.hypotheses.at("seed" + suffix).get<uint64_t>();
        prime = cert.hypotheses.at("prime" + suffix).get<uint32_t>();
        recorded = cert.hypotheses.at("rank" + suffix).get<long long>();
      } catch (const nlohmann::json::exception&) {
        fail(cert, "numeric hypotheses have the wrong type");
        return;
      }
      long long rk = 0;
      bool certified;
      try {
        certified = replay_critical_rank(cert.pair, z, seed, prime, &rk);
      } catch (const std::exception& e) {
        fail(cert, std::string("replay failed: ") + e.what());
        return;
      }
      if (rk != recorded) {
        fail(cert, "replayed rank differs from the recorded one at z=" + std::to_string(z));
        return;
      }
      if (!certified) {
        fail(cert, "replayed rank is not maximal at z=" + std::to_string(z));
        return;
      }
    }
  }

  void validate_peel(const Certificate& cert) {
    if (cert.verdict != Verdict::NotDefective) {
      fail(cert, "induction rules only certify NOT_DEFECTIVE");
      return;
    }
    if (cert.children.size() != 1) {
      fail(cert, "induction rules take exactly one child");
      return;
    }
    const Certificate& child = cert.children.front();
    const std::string child_key = child.pair.canonical_key();
    int peeled = -1;
    for (int i = 0; i < cert.pair.factor_count(); ++i)
      if (remove_factor(cert.pair, i).canonical_key() == child_key) {
        peeled = i;
        break;
      }
    if (peeled < 0) {
      fail(cert, "child pair is not the parent with one factor removed");
      return;
    }
    const int e = cert.pair.factor_dims[peeled];
    const long long t = cert.pair.multidegree[peeled];
    if (cert.rule == Rule::RuleA41 && e != 1) {
      fail(cert, "rule peels a P1 factor but none matches the child");
      return;
    }
    if (cert.rule == Rule::RuleA5 && e != 2) {
      fail(cert, "rule peels a P2 factor but none matches the child");
      return;
    }
    if (cert.rule == Rule::RuleP1OrP2 && e != 1 && e != 2) {
      fail(cert, "rule needs a P1 or P2 factor");
      return;
    }
    if (t < 2) {
      fail(cert, "peeled factor needs degree >= 2");
      return;
    }
    const long long alpha = child.pair.sections();
    const long long r = child.pair.dim();
    if (!check_recorded<long long>(cert, "t", t)) return;
    if (!check_recorded<long long>(cert, "alpha", alpha)) return;
    if (!check_recorded<long long>(cert, "r", r)) return;
    if (e == 2) {
      if (r < 2) {
        fail(cert, "base dimension too small for the induction over a plane factor");
        return;
      }
      if (!check_recorded<long long>(cert, "alpha_threshold", a4_threshold(r), false)) return;
      if (alpha < a4_threshold(r)) {
        fail(cert, "section count below the induction threshold");
        return;
      }
    } else {
      if (!check_recorded<long long>(cert, "alpha_min", (r + 1) * (r + 1) + 1, false)) return;
      if (r <= 1 || alpha <= (r + 1) * (r + 1)) {
        fail(cert, "base too small for the induction over a line factor");
        return;
      }
    }
    if (child.verdict != Verdict::NotDefective) {
      fail(cert, "child does not certify NOT_DEFECTIVE");
      return;
    }
    validate(child);
  }
};

}  // namespace

ValidationResult validate_certificate(const Certificate& cert, const DeriveOptions& opts) {
  Validator v{opts, {}};
  v.validate(cert);
  return {v.errors.empty(), std::move(v.errors)};
}

}  // namespace secant
