#include "gbs/report.hpp"

#include <json.hpp>

namespace gbs {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json stats_to_json(const SearchStats& s, bool include_timing) {
  ordered_json j;
  j["nodes"] = s.nodes;
  j["backtracks"] = s.backtracks;
  j["widenings"] = s.widenings;
  j["materialized"] = s.materialized;
  j["elapsed_ms"] = include_timing ? s.elapsed_ms : 0.0;
  return j;
}

SearchStats stats_from_json(const ordered_json& j) {
  SearchStats s;
  s.nodes = j.at("nodes").get<std::uint64_t>();
  s.backtracks = j.at("backtracks").get<std::uint64_t>();
  s.widenings = j.at("widenings").get<std::uint64_t>();
  s.materialized = j.at("materialized").get<std::uint64_t>();
  s.elapsed_ms = j.at("elapsed_ms").get<double>();
  return s;
}

ordered_json report_to_json(const RunReport& r) {
  ordered_json j;
  j["schema"] = r.schema;
  ordered_json input;
  input["e"] = r.e;
  input["two_e"] = 2 * r.e;
  j["input"] = input;
  ordered_json cfg;
  cfg["strategy"] = r.strategy;
  cfg["ordering"] = r.ordering;
  cfg["seed"] = r.seed;
  cfg["band_ratio"] = r.band_ratio;
  cfg["widen_scale"] = r.widen_scale;
  cfg["max_nodes"] = r.max_nodes;
  cfg["prune"] = r.prune;
  cfg["explored_cap"] = r.explored_cap;
  cfg["timing"] = r.include_timing;
  j["config"] = cfg;
  j["status"] = r.status;
  if (r.certificate) {
    const Certificate& c = *r.certificate;
    ordered_json cj;
    cj["k"] = c.k;
    cj["primes"] = c.primes;
    cj["residues"] = c.residues;
    cj["d"] = std::to_string(c.d);
    cj["q1"] = std::to_string(c.q1);
    cj["q2"] = std::to_string(c.q2);
    cj["strategy"] = c.strategy;
    cj["oversized_rows"] = c.oversized_rows;
    j["certificate"] = cj;
    j["verified"] = r.verified;
    j["verify_failures"] = r.verify_failures;
  }
  if (r.has_partition) {
    ordered_json pj;
    pj["b"] = r.partition_b;
    pj["variant"] = r.partition_variant;
    pj["h"] = r.partition_h;
    pj["descending_ok"] = r.descending_ok;
    pj["ascending_ok"] = r.ascending_ok;
    pj["descending_margin"] = r.descending_margin;
    pj["ascending_margin"] = r.ascending_margin;
    pj["signs"] = r.partition_signs;
    j["partition"] = pj;
  }
  j["frontier"] = r.frontier;
  j["stats"] = stats_to_json(r.stats, r.include_timing);
  if (r.oracle_min_d) j["oracle_min_d"] = std::to_string(*r.oracle_min_d);
  return j;
}

RunReport report_from_json(const ordered_json& j) {
  RunReport r;
  r.schema = j.at("schema").get<std::string>();
  r.e = j.at("input").at("e").get<std::int64_t>();
  const ordered_json& cfg = j.at("config");
  r.strategy = cfg.at("strategy").get<std::string>();
  r.ordering = cfg.at("ordering").get<std::string>();
  r.seed = cfg.at("seed").get<std::uint64_t>();
  r.band_ratio = cfg.at("band_ratio").get<double>();
  r.widen_scale = cfg.at("widen_scale").get<std::uint64_t>();
  r.max_nodes = cfg.at("max_nodes").get<std::uint64_t>();
  r.prune = cfg.at("prune").get<bool>();
  r.explored_cap = cfg.at("explored_cap").get<std::uint64_t>();
  r.include_timing = cfg.at("timing").get<bool>();
  r.status = j.at("status").get<std::string>();
  if (j.contains("certificate")) {
    const ordered_json& cj = j.at("certificate");
    Certificate c;
    c.e = r.e;
    c.k = cj.at("k").get<std::size_t>();
    c.primes = cj.at("primes").get<std::vector<std::int64_t>>();
    c.residues = cj.at("residues").get<std::vector<std::int64_t>>();
    c.d = std::stoll(cj.at("d").get<std::string>());
    c.q1 = std::stoll(cj.at("q1").get<std::string>());
    c.q2 = std::stoll(cj.at("q2").get<std::string>());
    c.strategy = cj.at("strategy").get<std::string>();
    c.oversized_rows = cj.at("oversized_rows").get<std::vector<std::size_t>>();
    r.certificate = std::move(c);
    r.verified = j.at("verified").get<bool>();
    r.verify_failures = j.at("verify_failures").get<std::vector<std::string>>();
  }
  if (j.contains("partition")) {
    const ordered_json& pj = j.at("partition");
    r.has_partition = true;
    r.partition_b = pj.at("b").get<std::vector<std::int64_t>>();
    r.partition_variant = pj.at("variant").get<std::string>();
    r.partition_h = pj.at("h").get<std::uint64_t>();
    r.descending_ok = pj.at("descending_ok").get<bool>();
    r.ascending_ok = pj.at("ascending_ok").get<bool>();
    r.descending_margin = pj.at("descending_margin").get<std::string>();
    r.ascending_margin = pj.at("ascending_margin").get<std::string>();
    r.partition_signs = pj.at("signs").get<std::vector<int>>();
  }
  r.frontier = j.at("frontier").get<std::vector<std::uint64_t>>();
  r.stats = stats_from_json(j.at("stats"));
  if (j.contains("oracle_min_d"))
    r.oracle_min_d = std::stoll(j.at("oracle_min_d").get<std::string>());
  return r;
}

} // namespace

std::string serialize_report(const RunReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  return report_from_json(ordered_json::parse(text));
}

bool operator==(const RunReport& a, const RunReport& b) {
  return report_to_json(a) == report_to_json(b);
}

} // namespace gbs
