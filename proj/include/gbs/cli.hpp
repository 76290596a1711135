#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gbs/report.hpp"
#include "gbs/search.hpp"

namespace gbs::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnsatisfied = 2;

struct DecomposeArgs {
  std::int64_t e = 0; // resolved target midpoint, > 7
  Strategy strategy = Strategy::exhaustive;
  SearchConfig config;
  std::string residues_spec = "canonical"; // partition input: "canonical" or comma list
  bool json = false;
  bool timing = false;
  bool with_oracle = false;
};

struct VerifyRangeArgs {
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::int64_t step = 1;
  Strategy strategy = Strategy::residue_scan;
  std::uint64_t max_nodes = 10'000'000;
  unsigned threads = 1;
  std::string out_path; // empty → standard output
};

struct BenchArgs {
  bool fixtures = true;
  std::uint64_t max_nodes = 10'000'000;
  std::uint64_t seed = 1;
  std::string out_path;
};

struct ExportArgs {
  std::int64_t e = 0;
  std::string format; // "subset-sum" | "csp"
  std::uint64_t depth = 8;
  std::string residues_spec = "canonical"; // weights for the BOUNDS line
  std::string out_path; // empty or "-" → standard output
};

struct ProbeArgs {
  std::int64_t from = 8;
  std::int64_t to = 2000;
  std::uint64_t max_nodes = 10'000'000; // per e
  std::string out_path;
};

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify_range(const VerifyRangeArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err);
int cmd_probe(const ProbeArgs& args, std::ostream& out, std::ostream& err);

// Resolves the mutually exclusive --e / --even pair; returns the midpoint
// or an error message.
std::optional<std::int64_t> resolve_midpoint(std::optional<std::int64_t> e,
                                             std::optional<std::int64_t> even,
                                             std::string& error);

// Parses "canonical" (empty result, meaning: derive from the basis) or a
// comma-separated residue list.
std::optional<std::vector<std::int64_t>> parse_residue_spec(const std::string& spec,
                                                            std::string& error);

RunReport build_search_report(std::int64_t e, Strategy strategy, const SearchConfig& config,
                              const SolveResult& result, bool timing, bool with_oracle);
RunReport build_partition_report(std::int64_t e, const SearchConfig& config,
                                 const std::vector<std::int64_t>& b,
                                 const PartitionOutcome& outcome, bool timing,
                                 bool with_oracle);

} // namespace gbs::cli
