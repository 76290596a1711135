#include <doctest.h>

#include <string>
#include <vector>

#include "gbs/cli.hpp"
#include "gbs/domain.hpp"
#include "gbs/ntheory.hpp"
#include "gbs/report.hpp"
#include "gbs/search.hpp"

using namespace gbs;

namespace {

RunReport make_search_report(std::int64_t e, Strategy strategy, SearchConfig config,
                             bool timing = false, bool with_oracle = false) {
  const PrimeBasis basis = build_basis(e);
  ResidueDomain domain = build_domain(basis);
  SolveResult result;
  switch (strategy) {
    case Strategy::exhaustive: result = solve_exhaustive(domain, config); break;
    case Strategy::forward: result = solve_forward_checking(domain, config); break;
    case Strategy::band: result = solve_band_heuristic(domain, config); break;
    case Strategy::residue_scan: result = solve_residue_scan(domain, config); break;
    default: REQUIRE(false);
  }
  return cli::build_search_report(e, strategy, config, result, timing, with_oracle);
}

} // namespace

TEST_CASE("search report round-trips through JSON") {
  SearchConfig config;
  const RunReport report = make_search_report(16, Strategy::exhaustive, config);
  CHECK(report.schema == "gbs/1");
  CHECK(report.status == "certificate");
  CHECK(report.verified);
  REQUIRE(report.certificate.has_value());
  CHECK(report.certificate->d == 3);

  const std::string text = serialize_report(report);
  CHECK(text.find("\"schema\": \"gbs/1\"") != std::string::npos);
  CHECK(text.find("\"d\": \"3\"") != std::string::npos);      // decimal string, not a number
  CHECK(text.find("\"q1\": \"13\"") != std::string::npos);
  CHECK(text.find("\"q2\": \"19\"") != std::string::npos);
  CHECK(text.back() == '\n');

  const RunReport back = parse_report(text);
  CHECK(back == report);
  CHECK(serialize_report(back) == text);
}

TEST_CASE("reports omit wall-clock time unless asked to keep it") {
  SearchConfig config;
  const RunReport quiet = make_search_report(68, Strategy::band, config, /*timing=*/false);
  CHECK_FALSE(quiet.include_timing);
  CHECK(quiet.stats.elapsed_ms == 0.0);
  const std::string text = serialize_report(quiet);
  CHECK(text.find("\"elapsed_ms\": 0.0") != std::string::npos);

  // two runs of the same deterministic strategy serialize byte-identically
  const RunReport again = make_search_report(68, Strategy::band, config, /*timing=*/false);
  CHECK(serialize_report(again) == text);
}

TEST_CASE("not-found reports round-trip without a certificate") {
  SearchConfig config;
  config.max_nodes = 100;
  const RunReport report = make_search_report(188, Strategy::exhaustive, config);
  CHECK(report.status == "not-found");
  CHECK_FALSE(report.certificate.has_value());
  CHECK_FALSE(report.verified);
  CHECK(report.stats.nodes == 100);

  const RunReport back = parse_report(serialize_report(report));
  CHECK(back == report);
  CHECK(back.stats.nodes == 100);
}

TEST_CASE("oracle cross-check is carried when requested") {
  SearchConfig config;
  const RunReport report = make_search_report(16, Strategy::exhaustive, config,
                                              /*timing=*/false, /*with_oracle=*/true);
  REQUIRE(report.oracle_min_d.has_value());
  CHECK(*report.oracle_min_d == 3);
  const std::string text = serialize_report(report);
  CHECK(text.find("\"oracle_min_d\": \"3\"") != std::string::npos);
  CHECK(parse_report(text) == report);
}

TEST_CASE("partition report round-trips with margins as decimal strings") {
  const std::int64_t e = 68;
  const PrimeBasis basis = build_basis(e);
  const std::vector<std::int64_t> b{3, 0, 1, 3, 5};
  const PartitionOutcome outcome = solve_sign_partition(e, basis, b);
  REQUIRE(outcome.certificate.has_value());
  CHECK(outcome.variant == "descending");

  SearchConfig config;
  const RunReport report =
      cli::build_partition_report(e, config, b, outcome, /*timing=*/false, /*with_oracle=*/false);
  CHECK(report.status == "certificate");
  CHECK(report.has_partition);
  CHECK(report.partition_variant == "descending");
  CHECK(report.partition_h == 1);
  CHECK(report.partition_b == b);
  CHECK(report.descending_ok);
  CHECK(report.descending_margin == "27");
  CHECK(report.verified);

  const std::string text = serialize_report(report);
  CHECK(text.find("\"descending_margin\": \"27\"") != std::string::npos);
  const RunReport back = parse_report(text);
  CHECK(back == report);
}

TEST_CASE("failed partition serializes as condition-failed") {
  const std::int64_t e = 68;
  const PrimeBasis basis = build_basis(e);
  const std::vector<std::int64_t> b = canonical_b(e, basis);
  const PartitionOutcome outcome = solve_sign_partition(e, basis, b);
  REQUIRE_FALSE(outcome.certificate.has_value());

  SearchConfig config;
  const RunReport report =
      cli::build_partition_report(e, config, b, outcome, /*timing=*/false, /*with_oracle=*/false);
  CHECK(report.status == "condition-failed");
  CHECK_FALSE(report.descending_ok);
  CHECK_FALSE(report.ascending_ok);
  CHECK(report.partition_variant.empty());

  const RunReport back = parse_report(serialize_report(report));
  CHECK(back == report);
}

TEST_CASE("report equality notices changed fields") {
  SearchConfig config;
  const RunReport a = make_search_report(16, Strategy::exhaustive, config);
  RunReport b = a;
  CHECK(a == b);
  b.seed = a.seed + 1;
  CHECK_FALSE(a == b);
}
