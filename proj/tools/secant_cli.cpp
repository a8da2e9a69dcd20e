#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "secant/cache.hpp"
#include "secant/claims.hpp"
#include "secant/cohomology.hpp"
#include "secant/engine.hpp"
#include "secant/scheme.hpp"
#include "secant/space.hpp"

using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<int> factors;
  std::vector<int> degrees;
  long long z = -1;
  long long u = -1;
  long long r = -1;
  long long alpha = -1;
  long long t = -1;
  long long a = -1;
  long long budget = 600;
  std::string scheme_text;
  std::string check;
  std::string lemma_id;
  std::string cert_path;
  std::string emit_cert;
  std::string cache_path;
  uint32_t prime = 0;
  uint64_t seed = secant::kDefaultSeed;
  int trials = 3;
  bool json_out = false;
};

secant::SegreVeronesePair pair_from(const Options& o) {
  return secant::SegreVeronesePair(o.factors, o.degrees);
}

secant::RankPolicy policy_from(const Options& o, std::unique_ptr<secant::RankCache>& cache) {
  secant::RankPolicy p;
  p.trials = o.trials;
  p.seed = o.seed;
  if (o.prime) p.primes = {o.prime};
  if (!o.cache_path.empty()) {
    cache = std::make_unique<secant::RankCache>(o.cache_path);
    p.cache = cache.get();
  }
  return p;
}

void add_pair_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--factors", o.factors, "factor dimensions n_i, e.g. 2,2,1")
      ->delimiter(',')
      ->required();
  cmd->add_option("--degrees", o.degrees, "multidegree d_i, e.g. 2,2,3")
      ->delimiter(',')
      ->required();
}

void add_policy_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--prime", o.prime, "restrict rank runs to this prime");
  cmd->add_option("--seed", o.seed, "base sampling seed");
  cmd->add_option("--trials", o.trials, "sampling trials per prime")->check(CLI::PositiveNumber);
  cmd->add_option("--cache", o.cache_path, "JSONL rank cache file");
}

void add_json_flag(CLI::App* cmd, Options& o) {
  cmd->add_flag("--json", o.json_out, "emit one JSON document instead of text");
}

std::string status_name(secant::DefectStatus s) {
  switch (s) {
    case secant::DefectStatus::NotDefectiveCertified:
      return "NOT_DEFECTIVE";
    case secant::DefectStatus::ProbablyDefective:
      return "PROBABLY_DEFECTIVE";
    case secant::DefectStatus::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

json report_to_json(const secant::CohomologyReport& r) {
  json runs = json::array();
  for (const secant::RankRun& run : r.runs)
    runs.push_back({{"prime", run.prime}, {"seed", run.seed}, {"rank", run.rank}});
  return {{"sections", r.sections}, {"degree", r.scheme_degree},
          {"rank", r.rank},         {"h0", r.h0},
          {"h1", r.h1},             {"certified", r.certified},
          {"prime", r.certifying_prime}, {"seed", r.certifying_seed},
          {"runs", runs}};
}

void print_report(const secant::CohomologyReport& r) {
  std::cout << "sections  " << r.sections << "\n"
            << "degree    " << r.scheme_degree << "\n"
            << "rank      " << r.rank << "\n"
            << "h0        " << r.h0 << "\n"
            << "h1        " << r.h1 << "\n"
            << "certified " << (r.certified ? "yes" : "no") << "\n";
  if (r.certified)
    std::cout << "witness   prime=" << r.certifying_prime << " seed=" << r.certifying_seed
              << "\n";
}

int cmd_h0(const Options& o) {
  const secant::SegreVeronesePair pair = pair_from(o);
  if (o.z < 0 && o.scheme_text.empty()) {
    const secant::CriticalRanks crit = secant::critical_z(pair);
    if (o.json_out) {
      json j{{"pair", pair.to_string()},
             {"sections", pair.sections()},
             {"dim", pair.dim()},
             {"z_lo", crit.z_lo},
             {"z_hi", crit.z_hi}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "pair      " << pair.to_string() << "\n"
                << "sections  " << pair.sections() << "\n"
                << "dim       " << pair.dim() << "\n"
                << "critical  z_lo=" << crit.z_lo << " z_hi=" << crit.z_hi << "\n";
    }
    return 0;
  }
  std::unique_ptr<secant::RankCache> cache;
  const secant::RankPolicy policy = policy_from(o, cache);
  const secant::SchemeSpec scheme = o.scheme_text.empty()
                                        ? secant::double_points(pair, o.z)
                                        : secant::parse_scheme(pair, o.scheme_text);
  const secant::CohomologyReport rep = secant::cohomology(scheme, policy);
  if (o.json_out) {
    json j = report_to_json(rep);
    j["pair"] = pair.to_string();
    j["scheme"] = scheme.descriptor();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair      " << pair.to_string() << "\n"
              << "scheme    " << scheme.descriptor() << "\n";
    print_report(rep);
  }
  return rep.certified ? 0 : 1;
}

int cmd_rank(const Options& o) {
  const secant::SegreVeronesePair pair = pair_from(o);
  if (o.z < 0 && o.scheme_text.empty())
    throw CLI::ValidationError("rank needs -z or --scheme");
  const secant::SchemeSpec scheme = o.scheme_text.empty()
                                        ? secant::double_points(pair, o.z)
                                        : secant::parse_scheme(pair, o.scheme_text);
  const uint32_t prime = o.prime ? o.prime : secant::kDefaultPrime;
  secant::PrimeField f(prime);
  const secant::SampledPoints pts = secant::sample_points(scheme, o.seed, f);
  secant::DenseMatrix m = secant::build_matrix(scheme, pts, f);
  const int rows = m.rows, cols = m.cols;
  const long long rk = secant::rank(std::move(m), f);
  const bool maximal = rk == std::min<long long>(rows, cols);
  if (o.json_out) {
    json j{{"pair", pair.to_string()}, {"scheme", scheme.descriptor()},
           {"rows", rows},             {"cols", cols},
           {"rank", rk},               {"maximal", maximal},
           {"prime", prime},           {"seed", o.seed}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair    " << pair.to_string() << "\n"
              << "scheme  " << scheme.descriptor() << "\n"
              << "matrix  " << rows << " x " << cols << " mod " << prime << " (seed " << o.seed
              << ")\n"
              << "rank    " << rk << (maximal ? " (maximal)" : "") << "\n";
  }
  return 0;
}

int cmd_defect(const Options& o) {
  const secant::SegreVeronesePair pair = pair_from(o);
  std::unique_ptr<secant::RankCache> cache;
  const secant::RankPolicy policy = policy_from(o, cache);
  std::optional<std::pair<long long, long long>> range;
  if (o.z >= 0) range = {o.z, o.z};
  const std::vector<secant::DefectivityVerdict> verdicts =
      secant::defect_scan(pair, policy, range);
  bool inconclusive = false;
  if (o.json_out) {
    json rows = json::array();
    for (const secant::DefectivityVerdict& v : verdicts) {
      json row{{"z", v.z}, {"status", status_name(v.status)}};
      if (v.status == secant::DefectStatus::ProbablyDefective) row["defect"] = v.defect;
      if (v.report) row["report"] = report_to_json(*v.report);
      rows.push_back(std::move(row));
      inconclusive |= v.status == secant::DefectStatus::Inconclusive;
    }
    json j{{"pair", pair.to_string()}, {"verdicts", rows}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair " << pair.to_string() << " (sections " << pair.sections() << ", dim "
              << pair.dim() << ")\n";
    std::cout << std::left << std::setw(6) << "z" << std::setw(22) << "status" << std::setw(10)
              << "rank" << std::setw(10) << "expected" << "defect\n";
    for (const secant::DefectivityVerdict& v : verdicts) {
      std::cout << std::left << std::setw(6) << v.z << std::setw(22) << status_name(v.status);
      if (v.report) {
        const long long expected = std::min(v.report->sections, v.report->scheme_degree);
        std::cout << std::setw(10) << v.report->rank << std::setw(10) << expected
                  << (expected - v.report->rank);
      } else {
        std::cout << std::setw(10) << "-" << std::setw(10) << "-" << "-";
      }
      std::cout << "\n";
      inconclusive |= v.status == secant::DefectStatus::Inconclusive;
    }
  }
  return inconclusive ? 1 : 0;
}

int cmd_claims(const Options& o) {
  secant::ClaimResult res;
  auto need = [&](long long v, const char* name) {
    if (v < 0) throw CLI::ValidationError(std::string("--check ") + o.check + " needs " + name);
    return v;
  };
  if (o.check == "claim1")
    res = secant::check_claim1(need(o.r, "--r"), need(o.alpha, "--alpha"), need(o.z, "-z"));
  else if (o.check == "claim2")
    res = secant::check_claim2(need(o.r, "--r"), need(o.alpha, "--alpha"), need(o.z, "-z"));
  else if (o.check == "claim3")
    res = secant::check_claim3(need(o.r, "--r"), need(o.alpha, "--alpha"));
  else if (o.check == "claim7")
    res = secant::check_claim7(need(o.a, "--a"));
  else if (o.check == "claim11")
    res = secant::check_claim11(need(o.r, "--r"), need(o.alpha, "--alpha"), need(o.t, "--t"));
  else
    throw CLI::ValidationError("unknown --check: " + o.check);
  if (o.json_out) {
    json j{{"check", o.check}, {"holds", res.holds}, {"witness", res.witness}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << o.check << " " << (res.holds ? "holds" : "fails") << "\n";
    for (const auto& [k, v] : res.witness) std::cout << "  " << k << " = " << v << "\n";
  }
  return 0;
}

int cmd_thresholds(const Options& o) {
  std::vector<long long> rs;
  if (o.r >= 2)
    rs.push_back(o.r);
  else
    for (long long r = 2; r <= 7; ++r) rs.push_back(r);
  const std::vector<secant::TailCertification> certs = secant::certify_tail_inequalities();
  if (o.json_out) {
    json rows = json::array();
    for (long long r : rs)
      rows.push_back({{"r", r},
                      {"alpha", secant::a4_threshold(r)},
                      {"alpha_old", secant::a4old_threshold(r)},
                      {"gap_verified", secant::verify_threshold_gap(r)}});
    json ineq = json::array();
    for (const secant::TailCertification& c : certs)
      ineq.push_back({{"name", c.name},
                      {"holds_tail", c.holds_tail},
                      {"holds_small", c.holds_small},
                      {"failed_r", c.failed_r}});
    std::cout << json{{"thresholds", rows}, {"inequalities", ineq}}.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(5) << "r" << std::setw(8) << "alpha" << std::setw(11)
              << "alpha_old" << "gap_verified\n";
    for (long long r : rs)
      std::cout << std::left << std::setw(5) << r << std::setw(8) << secant::a4_threshold(r)
                << std::setw(11) << secant::a4old_threshold(r)
                << (secant::verify_threshold_gap(r) ? "yes" : "NO") << "\n";
    std::cout << "\n"
              << std::left << std::setw(16) << "inequality" << std::setw(16) << "tail (r>=8)"
              << "small (r=2..7)\n";
    for (const secant::TailCertification& c : certs)
      std::cout << std::left << std::setw(16) << c.name << std::setw(16)
                << (c.holds_tail ? "certified" : "FAILS")
                << (c.holds_small ? "certified" : "FAILS") << "\n";
  }
  return 0;
}

int cmd_lemma(const Options& o) {
  const secant::SegreVeronesePair base = pair_from(o);
  std::unique_ptr<secant::RankCache> cache;
  const secant::RankPolicy policy = policy_from(o, cache);
  std::map<std::string, long long> params;
  if (o.z >= 0) params["z"] = o.z;
  if (o.u >= 0) params["u"] = o.u;
  const secant::LemmaReport rep = secant::verify_lemma_instance(o.lemma_id, base, params, policy);
  if (o.json_out) {
    json j{{"lemma", rep.lemma_id},
           {"base", base.to_string()},
           {"hypotheses_hold", rep.hypotheses_hold},
           {"conclusion_holds", rep.conclusion_holds},
           {"values", rep.values}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "lemma      " << rep.lemma_id << " over " << base.to_string() << "\n"
              << "hypotheses " << (rep.hypotheses_hold ? "hold" : "FAIL") << "\n"
              << "conclusion " << (rep.conclusion_holds ? "holds" : "FAILS") << "\n";
    for (const auto& [k, v] : rep.values) std::cout << "  " << k << " = " << v << "\n";
  }
  return 0;
}

void print_tree(const secant::Certificate& cert, int depth) {
  std::cout << std::string(depth * 2, ' ') << cert.pair.to_string() << ": "
            << secant::verdict_name(cert.verdict) << " via " << secant::rule_name(cert.rule);
  if (!cert.hypotheses.empty()) {
    std::cout << " [";
    bool first = true;
    for (const auto& [k, v] : cert.hypotheses.items()) {
      if (!first) std::cout << " ";
      first = false;
      std::cout << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::cout << "]";
  }
  std::cout << "\n";
  for (const secant::Certificate& c : cert.children) print_tree(c, depth + 1);
}

int cmd_derive(const Options& o) {
  const secant::SegreVeronesePair pair = pair_from(o);
  std::unique_ptr<secant::RankCache> cache;
  secant::DeriveOptions opts;
  opts.numeric_budget = o.budget;
  opts.policy = policy_from(o, cache);
  secant::Deriver deriver(opts);
  const secant::Certificate cert = deriver.derive(pair);
  if (!o.emit_cert.empty()) {
    std::ofstream out(o.emit_cert);
    if (!out) throw IoError("cannot write certificate: " + o.emit_cert);
    out << secant::certificate_to_json(cert).dump(2) << "\n";
  }
  if (o.json_out)
    std::cout << secant::certificate_to_json(cert).dump(2) << "\n";
  else
    print_tree(cert, 0);
  return cert.verdict == secant::Verdict::Inconclusive ? 1 : 0;
}

int cmd_validate(const Options& o) {
  std::ifstream in(o.cert_path);
  if (!in) throw IoError("cannot read certificate: " + o.cert_path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  std::vector<std::string> errors;
  bool valid = false;
  if (j.is_discarded()) {
    errors.push_back("certificate is not valid JSON");
  } else {
    try {
      const secant::Certificate cert = secant::certificate_from_json(j);
      secant::ValidationResult res = secant::validate_certificate(cert);
      valid = res.valid;
      errors = std::move(res.errors);
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
    }
  }
  if (o.json_out) {
    std::cout << json{{"valid", valid}, {"errors", errors}}.dump(2) << "\n";
  } else {
    std::cout << (valid ? "valid" : "INVALID") << "\n";
    for (const std::string& e : errors) std::cout << "  " << e << "\n";
  }
  return valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secant variety (non-)defectivity toolkit"};
  app.require_subcommand(1);
  Options o;

  CLI::App* h0 = app.add_subcommand("h0", "section counts and cohomology of double point schemes");
  add_pair_options(h0, o);
  h0->add_option("-z", o.z, "number of generic double points");
  h0->add_option("--scheme", o.scheme_text, "scheme descriptor, e.g. \"3*2pt + 2*2pt@H2\"");
  add_policy_options(h0, o);
  add_json_flag(h0, o);

  CLI::App* rank = app.add_subcommand("rank", "one deterministic interpolation rank");
  add_pair_options(rank, o);
  rank->add_option("-z", o.z, "number of generic double points");
  rank->add_option("--scheme", o.scheme_text, "scheme descriptor");
  rank->add_option("--prime", o.prime, "field characteristic");
  rank->add_option("--seed", o.seed, "sampling seed");
  add_json_flag(rank, o);

  CLI::App* defect = app.add_subcommand("defect", "scan secant defectivity over z");
  add_pair_options(defect, o);
  defect->add_option("-z", o.z, "check a single z instead of the full range");
  add_policy_options(defect, o);
  add_json_flag(defect, o);

  CLI::App* claims = app.add_subcommand("claims", "bookkeeping claims behind the induction");
  claims->add_option("--check", o.check, "claim1|claim2|claim3|claim7|claim11")->required();
  claims->add_option("--r", o.r, "base dimension");
  claims->add_option("--alpha", o.alpha, "base section count");
  claims->add_option("-z", o.z, "number of double points");
  claims->add_option("--t", o.t, "degree on the last factor");
  claims->add_option("--a", o.a, "half degree for claim7");
  add_json_flag(claims, o);

  CLI::App* thresholds = app.add_subcommand("thresholds", "induction thresholds and their gaps");
  thresholds->add_option("--r", o.r, "restrict to one base dimension");
  add_json_flag(thresholds, o);

  CLI::App* lemma = app.add_subcommand("lemma", "verify one induction lemma instance");
  lemma->add_option("--id", o.lemma_id, "a1a|a1c|a3a|a3b|a5_0|a1_2")->required();
  add_pair_options(lemma, o);
  lemma->add_option("-z", o.z, "number of generic double points");
  lemma->add_option("--u", o.u, "number of doubled points on the divisor");
  add_policy_options(lemma, o);
  add_json_flag(lemma, o);

  CLI::App* derive = app.add_subcommand("derive", "derive a non-defectivity certificate");
  add_pair_options(derive, o);
  derive->add_option("--budget", o.budget, "largest section count for numeric leaves");
  derive->add_option("--emit-cert", o.emit_cert, "write the certificate JSON here");
  add_policy_options(derive, o);
  add_json_flag(derive, o);

  CLI::App* validate = app.add_subcommand("validate", "revalidate a certificate file");
  validate->add_option("--cert", o.cert_path, "certificate JSON file")->required();
  add_json_flag(validate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(h0)) return cmd_h0(o);
    if (app.got_subcommand(rank)) return cmd_rank(o);
    if (app.got_subcommand(defect)) return cmd_defect(o);
    if (app.got_subcommand(claims)) return cmd_claims(o);
    if (app.got_subcommand(thresholds)) return cmd_thresholds(o);
    if (app.got_subcommand(lemma)) return cmd_lemma(o);
    if (app.got_subcommand(derive)) return cmd_derive(o);
    if (app.got_subcommand(validate)) return cmd_validate(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
