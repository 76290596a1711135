#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "gbs/cli.hpp"
#include "gbs/domain.hpp"

namespace {

gbs::Ordering ordering_from(const std::string& name) {
  return name == "mean" ? gbs::Ordering::descending_row_mean : gbs::Ordering::basis_order;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goldbach midpoint decomposition toolkit"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand(
      "decompose", "Search one midpoint for a signed residue certificate");
  std::optional<std::int64_t> opt_e;
  std::optional<std::int64_t> opt_even;
  dec->add_option("--e", opt_e, "midpoint e, must be > 7");
  dec->add_option("--even", opt_even, "even target 2e");
  std::string dec_strategy = "exhaustive";
  dec->add_option("--strategy", dec_strategy, "search strategy")
      ->check(CLI::IsMember({"exhaustive", "forward", "band", "partition", "residue-scan"}));
  std::string dec_ordering = "basis";
  dec->add_option("--ordering", dec_ordering, "row order for the walk")
      ->check(CLI::IsMember({"basis", "mean"}));
  gbs::cli::DecomposeArgs dargs;
  dec->add_option("--seed", dargs.config.seed, "seed for the forward strategy");
  dec->add_option("--max-nodes", dargs.config.max_nodes, "node budget");
  dec->add_option("--band-ratio", dargs.config.band_ratio, "band alignment ratio in (0, 1]");
  dec->add_option("--widen-scale", dargs.config.widen_scale, "forward widening factor");
  dec->add_option("--explored-cap", dargs.config.explored_cap,
                  "forward explored-set capacity");
  bool no_prune = false;
  dec->add_flag("--no-prune", no_prune, "disable the window overshoot skip");
  dec->add_option("--b", dargs.residues_spec,
                  "partition residues: 'canonical' or a comma-separated list");
  dec->add_flag("--json", dargs.json, "emit the report as JSON");
  dec->add_flag("--timing", dargs.timing, "include wall-clock timings in the report");
  dec->add_flag("--oracle", dargs.with_oracle, "cross-check against the brute-force scan");

  // verify-range
  auto* ver = app.add_subcommand("verify-range",
                                 "Sweep a midpoint range and verify every certificate");
  gbs::cli::VerifyRangeArgs vargs;
  ver->add_option("--from", vargs.from, "first midpoint, must be > 7")->required();
  ver->add_option("--to", vargs.to, "last midpoint")->required();
  ver->add_option("--step", vargs.step, "midpoint stride");
  std::string ver_strategy = "residue-scan";
  ver->add_option("--strategy", ver_strategy, "search strategy")
      ->check(CLI::IsMember({"exhaustive", "forward", "band", "residue-scan"}));
  ver->add_option("--max-nodes", vargs.max_nodes, "node budget per midpoint");
  ver->add_option("--threads", vargs.threads, "worker threads")->envname("GBS_THREADS");
  ver->add_option("--out", vargs.out_path, "CSV output path (default: standard output)");

  // bench
  auto* ben = app.add_subcommand("bench", "Run every walk strategy on the reference set");
  gbs::cli::BenchArgs bargs;
  ben->add_flag("--fixtures,!--no-fixtures", bargs.fixtures,
                "validate the reference (e, d) pairs first");
  ben->add_option("--max-nodes", bargs.max_nodes, "node budget per run");
  ben->add_option("--seed", bargs.seed, "seed for the forward strategy");
  ben->add_option("--out", bargs.out_path, "CSV output path (default: standard output)");

  // export
  auto* exp = app.add_subcommand("export", "Write a solver-ready instance file");
  gbs::cli::ExportArgs eargs;
  exp->add_option("--e", eargs.e, "midpoint e, must be > 7")->required();
  exp->add_option("--format", eargs.format, "instance flavor")
      ->required()
      ->check(CLI::IsMember({"subset-sum", "csp"}));
  exp->add_option("--depth", eargs.depth, "candidates per row, at least 1");
  exp->add_option("--b", eargs.residues_spec,
                  "bounds residues: 'canonical' or a comma-separated list");
  exp->add_option("--out", eargs.out_path, "output path ('-' for standard output)");

  // probe
  auto* pro = app.add_subcommand("probe",
                                 "Tabulate the smallest residue magnitude per midpoint");
  gbs::cli::ProbeArgs pargs;
  pro->add_option("--from", pargs.from, "first midpoint, must be > 7");
  pro->add_option("--to", pargs.to, "last midpoint");
  pro->add_option("--max-nodes", pargs.max_nodes, "node budget per midpoint");
  pro->add_option("--out", pargs.out_path, "CSV output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gbs::cli::kExitUsage;
  }

  if (dec->parsed()) {
    std::string error;
    const auto mid = gbs::cli::resolve_midpoint(opt_e, opt_even, error);
    if (!mid) {
      std::cerr << "gbs: " << error << "\n";
      return gbs::cli::kExitUsage;
    }
    dargs.e = *mid;
    dargs.strategy = *gbs::strategy_from_name(dec_strategy);
    dargs.config.strategy = dargs.strategy;
    dargs.config.ordering = ordering_from(dec_ordering);
    dargs.config.prune = !no_prune;
    return gbs::cli::cmd_decompose(dargs, std::cout, std::cerr);
  }
  if (ver->parsed()) {
    vargs.strategy = *gbs::strategy_from_name(ver_strategy);
    return gbs::cli::cmd_verify_range(vargs, std::cout, std::cerr);
  }
  if (ben->parsed()) return gbs::cli::cmd_bench(bargs, std::cout, std::cerr);
  if (exp->parsed()) return gbs::cli::cmd_export(eargs, std::cout, std::cerr);
  if (pro->parsed()) return gbs::cli::cmd_probe(pargs, std::cout, std::cerr);
  return gbs::cli::kExitUsage;
}
