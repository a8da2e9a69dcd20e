#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "secant/cohomology.hpp"
#include "secant/space.hpp"

namespace secant {

enum class Verdict { NotDefective, Defective, Inconclusive };

enum class Rule { DbLookup, NumericCheck, RuleA41, RuleA5, RuleP1OrP2, Inconclusive };

std::string verdict_name(Verdict v);
std::string rule_name(Rule r);
Verdict verdict_from_name(const std::string& s);
Rule rule_from_name(const std::string& s);

struct KnownFact {
  Verdict verdict = Verdict::Inconclusive;
  std::string source;  // classification the fact is quoted from
  std::string detail;
};

// Published complete classifications: Veronese varieties
// (AlexanderHirschowitz), products of P1s (LafacePostinghel), two factors
// with both degrees >= 3 (GaluppiOneto), P1 x P2 (BaurDraisma) and the two
// sporadic defective products (CatalisanoGeramitaGimigliano). Factor order
// is ignored. Every matching classification is consulted; disagreement
// would be a bug and throws.
std::optional<KnownFact> lookup_known(const SegreVeronesePair& pair);

// Machine-checkable derivation tree. Leaves are database facts or numeric
// rank certifications; inner nodes apply one induction rule to the pair
// obtained by removing the peeled factor (the single child).
struct Certificate {
  std::string version = "cert-v1";
  SegreVeronesePair pair;
  Verdict verdict = Verdict::Inconclusive;
  Rule rule = Rule::Inconclusive;
  nlohmann::json hypotheses = nlohmann::json::object();
  std::vector<uint64_t> seeds;
  uint32_t prime = 0;
  std::vector<Certificate> children;

  explicit Certificate(SegreVeronesePair p) : pair(std::move(p)) {}
};

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

struct DeriveOptions {
  // Largest section count for which ranks are computed directly.
  long long numeric_budget = 600;
  RankPolicy policy;
};

// Decides non-defectivity by database lookup, then by peeling P2 factors
// (largest degree first) and P1 factors with the induction rules, then by
// direct rank computation within the budget. Defective verdicts only ever
// come from the database; a deficient sampled rank alone is inconclusive.
class Deriver {
 public:
  explicit Deriver(DeriveOptions opts = {}) : opts_(std::move(opts)) {}
  Certificate derive(const SegreVeronesePair& pair);

 private:
  DeriveOptions opts_;
  std::map<std::string, Certificate> memo_;
};

struct ValidationResult {
  bool valid = false;
  std::vector<std::string> errors;
};

// Recomputes everything a certificate asserts: database facts are looked
// up again, rule hypotheses are recomputed from the pair and compared
// against the recorded values, numeric leaves are replayed with the
// recorded seeds and primes. Inconclusive certificates never validate.
ValidationResult validate_certificate(const Certificate& cert, const DeriveOptions& opts = {});

}  // namespace secant
