#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbs/search.hpp"

namespace gbs {

// Machine-readable outcome of one decomposition run.  Serializes to JSON
// with a fixed key order; d, q1, q2 and the partition margins are emitted
// as exact decimal strings.  When include_timing is false every elapsed
// field is pinned to zero so repeated runs with the same seed serialize
// byte-identically.
struct RunReport {
  std::string schema = "gbs/1";
  std::int64_t e = 0;

  // config echo
  std::string strategy;
  std::string ordering = "basis";
  std::uint64_t seed = 0;
  double band_ratio = 0.98;
  std::uint64_t widen_scale = 2;
  std::uint64_t max_nodes = 0;
  bool prune = true;
  std::uint64_t explored_cap = 0;
  bool include_timing = false;

  // outcome
  std::string status; // "certificate" | "not-found" | "condition-failed"
  std::optional<Certificate> certificate;
  bool verified = false;
  std::vector<std::string> verify_failures;

  // sign-partition detail, present only for that strategy
  bool has_partition = false;
  std::vector<std::int64_t> partition_b;
  std::string partition_variant; // "descending", "ascending", or "" when neither holds
  std::uint64_t partition_h = 0;
  bool descending_ok = false;
  bool ascending_ok = false;
  std::string descending_margin;
  std::string ascending_margin;
  std::vector<int> partition_signs;

  std::vector<std::uint64_t> frontier;
  SearchStats stats;
  std::optional<std::int64_t> oracle_min_d;
};

std::string serialize_report(const RunReport& report);
RunReport parse_report(const std::string& text);
bool operator==(const RunReport& a, const RunReport& b);

} // namespace gbs
