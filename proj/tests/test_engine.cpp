#include <doctest.h>

#include <stdexcept>
#include <string>

#include "secant/engine.hpp"

using namespace secant;

namespace {

SegreVeronesePair pair_of(std::vector<int> dims, std::vector<int> degs) {
  return SegreVeronesePair(std::move(dims), std::move(degs));
}

}  // namespace

TEST_CASE("verdict and rule names round trip") {
  for (Verdict v : {Verdict::NotDefective, Verdict::Defective, Verdict::Inconclusive})
    CHECK(verdict_from_name(verdict_name(v)) == v);
  for (Rule r : {Rule::DbLookup, Rule::NumericCheck, Rule::RuleA41, Rule::RuleA5,
                 Rule::RuleP1OrP2, Rule::Inconclusive})
    CHECK(rule_from_name(rule_name(r)) == r);
  CHECK(verdict_name(Verdict::NotDefective) == "NOT_DEFECTIVE");
  CHECK(rule_name(Rule::RuleA5) == "RULE_A5");
  CHECK_THROWS_AS(verdict_from_name("MAYBE"), std::invalid_argument);
  CHECK_THROWS_AS(rule_from_name("RULE_A99"), std::invalid_argument);
}

TEST_CASE("classification lookups on one factor") {
  auto veronese = [](int n, int d) { return lookup_known(pair_of({n}, {d})); };
  CHECK(veronese(2, 2)->verdict == Verdict::Defective);
  CHECK(veronese(3, 2)->verdict == Verdict::Defective);
  CHECK(veronese(1, 2)->verdict == Verdict::NotDefective);
  CHECK(veronese(2, 4)->verdict == Verdict::Defective);
  CHECK(veronese(3, 4)->verdict == Verdict::Defective);
  CHECK(veronese(4, 3)->verdict == Verdict::Defective);
  CHECK(veronese(4, 4)->verdict == Verdict::Defective);
  CHECK(veronese(2, 3)->verdict == Verdict::NotDefective);
  CHECK(veronese(2, 5)->verdict == Verdict::NotDefective);
  CHECK(veronese(4, 5)->verdict == Verdict::NotDefective);
  CHECK(veronese(2, 2)->source == "AlexanderHirschowitz");
}

TEST_CASE("classification lookups on products of lines") {
  auto lines = [](std::vector<int> degs) {
    std::vector<int> dims(degs.size(), 1);
    return lookup_known(pair_of(dims, std::move(degs)));
  };
  CHECK(lines({2, 2})->verdict == Verdict::Defective);
  CHECK(lines({4, 2})->verdict == Verdict::Defective);
  CHECK(lines({3, 2})->verdict == Verdict::NotDefective);
  CHECK(lines({3, 3})->verdict == Verdict::NotDefective);
  CHECK(lines({2, 2, 2})->verdict == Verdict::Defective);
  CHECK(lines({3, 2, 2})->verdict == Verdict::NotDefective);
  CHECK(lines({2, 2, 2, 2})->verdict == Verdict::NotDefective);
  CHECK(lines({2, 2})->source == "LafacePostinghel");
  CHECK(!lines({1, 2}).has_value());  // a degree-1 factor is not covered
}

TEST_CASE("classification lookups on mixed products") {
  CHECK(lookup_known(pair_of({2, 2}, {3, 3}))->verdict == Verdict::NotDefective);
  CHECK(lookup_known(pair_of({2, 2}, {3, 3}))->source == "GaluppiOneto");
  CHECK(lookup_known(pair_of({3, 2}, {4, 3}))->verdict == Verdict::NotDefective);

  CHECK(lookup_known(pair_of({2, 1}, {2, 2}))->verdict == Verdict::Defective);
  CHECK(lookup_known(pair_of({1, 2}, {2, 2}))->verdict == Verdict::Defective);
  CHECK(lookup_known(pair_of({2, 1}, {2, 3}))->verdict == Verdict::NotDefective);
  CHECK(lookup_known(pair_of({2, 1}, {2, 4}))->verdict == Verdict::Defective);
  CHECK(lookup_known(pair_of({2, 1}, {3, 2}))->verdict == Verdict::NotDefective);
  CHECK(lookup_known(pair_of({2, 1}, {2, 4}))->source == "BaurDraisma");
  // two classifications cover this one and agree
  CHECK(lookup_known(pair_of({2, 1}, {3, 3}))->verdict == Verdict::NotDefective);

  CHECK(lookup_known(pair_of({2, 2}, {2, 2}))->verdict == Verdict::Defective);
  CHECK(lookup_known(pair_of({2, 2}, {2, 2}))->source == "CatalisanoGeramitaGimigliano");
  CHECK(lookup_known(pair_of({2, 1, 1}, {2, 2, 2}))->verdict == Verdict::Defective);
  CHECK(lookup_known(pair_of({1, 2, 1}, {2, 2, 2}))->verdict == Verdict::Defective);

  CHECK(!lookup_known(pair_of({2, 2, 2}, {2, 2, 2})).has_value());
  CHECK(!lookup_known(pair_of({3, 2}, {3, 2})).has_value());
  CHECK(!lookup_known(pair_of({2, 2}, {1, 3})).has_value());
  CHECK(!lookup_known(pair_of({1, 2}, {0, 3})).has_value());
}

TEST_CASE("derivation peels a plane factor when the threshold allows it") {
  Deriver deriver;
  auto cert = deriver.derive(pair_of({2, 2, 2, 2}, {2, 2, 2, 2}));
  CHECK(cert.verdict == Verdict::NotDefective);
  CHECK(cert.rule == Rule::RuleA5);
  CHECK(cert.hypotheses.at("t") == 2);
  CHECK(cert.hypotheses.at("alpha") == 216);
  CHECK(cert.hypotheses.at("r") == 6);
  CHECK(cert.hypotheses.at("alpha_threshold") == 176);
  REQUIRE(cert.children.size() == 1);
  const Certificate& child = cert.children.front();
  CHECK(child.pair.canonical_key() == "P2xP2xP2 deg (2,2,2)");
  CHECK(child.rule == Rule::NumericCheck);
  CHECK(child.hypotheses.at("N") == 216);
  CHECK(child.hypotheses.at("z_lo") == 30);
  CHECK(child.hypotheses.at("z_hi") == 31);
  CHECK(child.hypotheses.at("rank_lo") == 210);
  CHECK(child.hypotheses.at("rank_hi") == 216);

  auto res = validate_certificate(cert);
  CHECK(res.valid);
  CHECK(res.errors.empty());
}

TEST_CASE("derivation falls back to peeling a line factor") {
  Deriver deriver;
  auto cert = deriver.derive(pair_of({1, 3, 2}, {3, 3, 2}));
  CHECK(cert.verdict == Verdict::NotDefective);
  CHECK(cert.rule == Rule::RuleA41);  // the plane peel is below its threshold
  CHECK(cert.hypotheses.at("t") == 3);
  CHECK(cert.hypotheses.at("alpha") == 120);
  CHECK(cert.hypotheses.at("r") == 5);
  CHECK(cert.hypotheses.at("alpha_min") == 37);
  REQUIRE(cert.children.size() == 1);
  const Certificate& child = cert.children.front();
  CHECK(child.pair.canonical_key() == "P3xP2 deg (3,2)");
  CHECK(child.rule == Rule::NumericCheck);
  CHECK(child.hypotheses.at("z_lo") == 20);
  CHECK(child.hypotheses.at("z_hi") == 20);
  CHECK(child.hypotheses.contains("rank_hi"));
  CHECK(!child.hypotheses.contains("rank_lo"));  // the critical counts coincide

  CHECK(validate_certificate(cert).valid);
}

TEST_CASE("derivation quotes the database for defective pairs") {
  Deriver deriver;
  auto cert = deriver.derive(pair_of({2, 2}, {2, 2}));
  CHECK(cert.verdict == Verdict::Defective);
  CHECK(cert.rule == Rule::DbLookup);
  CHECK(cert.hypotheses.at("source") == "CatalisanoGeramitaGimigliano");
  CHECK(cert.children.empty());
  CHECK(validate_certificate(cert).valid);
}

TEST_CASE("derivation survives defective bases by checking numerically") {
  Deriver deriver;
  auto cert = deriver.derive(pair_of({1, 1, 2}, {4, 2, 2}));
  CHECK(cert.verdict == Verdict::NotDefective);
  CHECK(cert.rule == Rule::NumericCheck);  // both peels lead to defective bases
  CHECK(cert.hypotheses.at("N") == 90);
  CHECK(cert.hypotheses.at("z_lo") == 18);
  CHECK(cert.hypotheses.at("z_hi") == 18);
  CHECK(validate_certificate(cert).valid);
}

TEST_CASE("derivation without budget is inconclusive, never defective") {
  DeriveOptions opts;
  opts.numeric_budget = 0;
  Deriver deriver(opts);
  auto cert = deriver.derive(pair_of({3, 2}, {3, 2}));
  CHECK(cert.verdict == Verdict::Inconclusive);
  CHECK(cert.rule == Rule::Inconclusive);
  CHECK(cert.hypotheses.contains("reason"));
  auto res = validate_certificate(cert);
  CHECK(!res.valid);
}

TEST_CASE("certificates round trip through JSON") {
  Deriver deriver;
  auto cert = deriver.derive(pair_of({1, 3, 2}, {3, 3, 2}));
  auto j = certificate_to_json(cert);
  auto back = certificate_from_json(j);
  CHECK(certificate_to_json(back) == j);
  CHECK(back.pair == cert.pair);
  CHECK(back.verdict == cert.verdict);
  CHECK(back.rule == cert.rule);
  CHECK(back.seeds == cert.seeds);
  REQUIRE(back.children.size() == 1);
  CHECK(validate_certificate(back).valid);

  auto missing = j;
  missing.erase("verdict");
  CHECK_THROWS_AS(certificate_from_json(missing), std::invalid_argument);
  auto badrule = j;
  badrule["rule"] = "RULE_A99";
  CHECK_THROWS_AS(certificate_from_json(badrule), std::invalid_argument);
  auto badpair = j;
  badpair["pair"] = 7;
  CHECK_THROWS_AS(certificate_from_json(badpair), std::invalid_argument);
  CHECK_THROWS_AS(certificate_from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("validation rejects tampered certificates") {
  Deriver deriver;
  const auto a5 = deriver.derive(pair_of({2, 2, 2, 2}, {2, 2, 2, 2}));
  const auto numeric = deriver.derive(pair_of({3, 2}, {3, 2}));
  const auto db = deriver.derive(pair_of({2, 2}, {2, 2}));
  REQUIRE(a5.rule == Rule::RuleA5);
  REQUIRE(numeric.rule == Rule::NumericCheck);

  auto wrong_alpha = a5;
  wrong_alpha.hypotheses["alpha"] = 175;
  auto res = validate_certificate(wrong_alpha);
  CHECK(!res.valid);
  REQUIRE(!res.errors.empty());
  CHECK(res.errors.front().find("alpha") != std::string::npos);

  auto wrong_rank = numeric;
  wrong_rank.hypotheses["rank_hi"] = numeric.hypotheses.at("rank_hi").get<long long>() - 1;
  CHECK(!validate_certificate(wrong_rank).valid);

  auto wrong_version = a5;
  wrong_version.version = "cert-v0";
  CHECK(!validate_certificate(wrong_version).valid);

  auto no_child = a5;
  no_child.children.clear();
  CHECK(!validate_certificate(no_child).valid);

  auto wrong_verdict = db;
  wrong_verdict.verdict = Verdict::NotDefective;
  CHECK(!validate_certificate(wrong_verdict).valid);

  auto defective_numeric = numeric;
  defective_numeric.verdict = Verdict::Defective;
  CHECK(!validate_certificate(defective_numeric).valid);

  auto uncovered_db = db;
  uncovered_db.pair = pair_of({2, 2, 2}, {2, 2, 2});  // no classification applies
  CHECK(!validate_certificate(uncovered_db).valid);

  // the legacy rule name is accepted for either peel direction
  auto renamed = deriver.derive(pair_of({1, 3, 2}, {3, 3, 2}));
  renamed.rule = Rule::RuleP1OrP2;
  CHECK(validate_certificate(renamed).valid);
  auto renamed_a5 = a5;
  renamed_a5.rule = Rule::RuleP1OrP2;
  CHECK(validate_certificate(renamed_a5).valid);

  // a peel rule must name a child one factor away
  auto bad_child = a5;
  bad_child.children.front().pair = pair_of({2, 2}, {2, 2});
  CHECK(!validate_certificate(bad_child).valid);
}

TEST_CASE("derivation memoizes repeated bases") {
  Deriver deriver;
  auto first = deriver.derive(pair_of({2, 2, 2}, {2, 2, 2}));
  auto second = deriver.derive(pair_of({2, 2, 2}, {2, 2, 2}));
  CHECK(certificate_to_json(first) == certificate_to_json(second));
}
