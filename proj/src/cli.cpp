#include "gbs/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gbs/domain.hpp"
#include "gbs/ntheory.hpp"
#include "gbs/oracle.hpp"

namespace gbs::cli {

namespace {

SolveResult run_strategy(ResidueDomain& dom, Strategy s, const SearchConfig& cfg) {
  switch (s) {
    case Strategy::exhaustive: return solve_exhaustive(dom, cfg);
    case Strategy::forward: return solve_forward_checking(dom, cfg);
    case Strategy::band: return solve_band_heuristic(dom, cfg);
    case Strategy::residue_scan: return solve_residue_scan(dom, cfg);
    case Strategy::partition: break; // handled by the caller
  }
  throw std::logic_error("partition has no domain walker");
}

void echo_config(RunReport& r, Strategy strategy, const SearchConfig& cfg, bool timing) {
  r.strategy = strategy_name(strategy);
  r.ordering = cfg.ordering == Ordering::basis_order ? "basis" : "mean";
  r.seed = cfg.seed;
  r.band_ratio = cfg.band_ratio;
  r.widen_scale = static_cast<std::uint64_t>(cfg.widen_scale);
  r.max_nodes = cfg.max_nodes;
  r.prune = cfg.prune;
  r.explored_cap = cfg.explored_cap;
  r.include_timing = timing;
}

void attach_oracle(RunReport& r, std::int64_t e, bool with_oracle) {
  if (!with_oracle) return;
  if (const auto min = brute_force_min_d(e)) r.oracle_min_d = min->d;
}

void emit_text(const RunReport& r, std::ostream& out) {
  out << "e = " << r.e << "  (2e = " << 2 * r.e << ")\n";
  out << "strategy = " << r.strategy << "\n";
  out << "status = " << r.status << "\n";
  if (r.certificate) {
    const Certificate& c = *r.certificate;
    out << "d = " << c.d << "  q1 = " << c.q1 << "  q2 = " << c.q2 << "\n";
    out << "residues =";
    for (std::int64_t v : c.residues) out << ' ' << v;
    out << "\n";
    if (!c.oversized_rows.empty()) {
      out << "oversized_rows =";
      for (std::size_t i : c.oversized_rows) out << ' ' << i;
      out << "\n";
    }
    out << "verified = " << (r.verified ? "yes" : "no") << "\n";
    for (const std::string& f : r.verify_failures) out << "failure: " << f << "\n";
  }
  if (r.has_partition) {
    out << "b =";
    for (std::int64_t v : r.partition_b) out << ' ' << v;
    out << "\n";
    out << "variant = " << (r.partition_variant.empty() ? "none" : r.partition_variant)
        << "  h = " << r.partition_h << "\n";
    out << "descending: ok=" << (r.descending_ok ? "yes" : "no")
        << " margin=" << r.descending_margin << "\n";
    out << "ascending: ok=" << (r.ascending_ok ? "yes" : "no")
        << " margin=" << r.ascending_margin << "\n";
    if (!r.partition_signs.empty()) {
      out << "signs =";
      for (int s : r.partition_signs) out << ' ' << (s > 0 ? "+1" : "-1");
      out << "\n";
    }
  }
  out << "nodes = " << r.stats.nodes << "  backtracks = " << r.stats.backtracks
      << "  widenings = " << r.stats.widenings
      << "  materialized = " << r.stats.materialized;
  if (r.include_timing)
    out << "  elapsed_ms = " << std::fixed << std::setprecision(3) << r.stats.elapsed_ms
        << std::defaultfloat;
  out << "\n";
  if (r.oracle_min_d) out << "oracle_min_d = " << *r.oracle_min_d << "\n";
}

void emit(const RunReport& r, bool json, std::ostream& out) {
  if (json)
    out << serialize_report(r);
  else
    emit_text(r, out);
}

// Opens the output sink: a file when path is set (and not "-"), standard
// output otherwise.  Returns false when the file cannot be created.
bool open_sink(const std::string& path, std::ostream& out, std::ofstream& file,
               std::ostream*& sink, std::ostream& err) {
  if (path.empty() || path == "-") {
    sink = &out;
    return true;
  }
  file.open(path);
  if (!file) {
    err << "gbs: cannot write " << path << "\n";
    return false;
  }
  sink = &file;
  return true;
}

struct RangeRow {
  std::int64_t e = 0;
  std::string strategy;
  bool solved = false;
  bool verified = false;
  std::int64_t d = 0;
  std::int64_t q1 = 0;
  std::int64_t q2 = 0;
  std::uint64_t nodes = 0;
  double time_ms = 0.0;
  std::optional<std::int64_t> oracle_min;
};

RangeRow sweep_one(std::int64_t e, Strategy strat, std::uint64_t max_nodes) {
  RangeRow row;
  row.e = e;
  row.strategy = strategy_name(strat);
  try {
    const PrimeBasis basis = build_basis(e);
    ResidueDomain dom = build_domain(basis);
    SearchConfig cfg;
    cfg.strategy = strat;
    cfg.max_nodes = max_nodes;
    const SolveResult res = run_strategy(dom, strat, cfg);
    row.nodes = res.stats.nodes;
    row.time_ms = res.stats.elapsed_ms;
    if (res.certificate) {
      row.solved = true;
      row.d = res.certificate->d;
      row.q1 = res.certificate->q1;
      row.q2 = res.certificate->q2;
      row.verified = verify_certificate(e, *res.certificate).pass;
    }
    if (const auto min = brute_force_min_d(e)) row.oracle_min = min->d;
    // the oracle minimum can never exceed a verified |d|; a violation
    // would mean one of the two sides is wrong, so flag the row
    if (row.verified && row.oracle_min) {
      const std::int64_t mag = row.d < 0 ? -row.d : row.d;
      if (mag < *row.oracle_min) row.verified = false;
    }
  } catch (const std::exception&) {
    row.verified = false;
  }
  return row;
}

} // namespace

std::optional<std::int64_t> resolve_midpoint(std::optional<std::int64_t> e,
                                             std::optional<std::int64_t> even,
                                             std::string& error) {
  if (e.has_value() == even.has_value()) {
    error = "give exactly one of --e or --even";
    return std::nullopt;
  }
  std::int64_t mid = 0;
  if (even) {
    if (*even % 2 != 0) {
      error = "--even must be an even number";
      return std::nullopt;
    }
    mid = *even / 2;
  } else {
    mid = *e;
  }
  if (mid <= 7) {
    error = "the midpoint must be greater than 7";
    return std::nullopt;
  }
  if (mid > (std::int64_t{1} << 31)) {
    error = "the midpoint must be at most 2^31";
    return std::nullopt;
  }
  return mid;
}

std::optional<std::vector<std::int64_t>> parse_residue_spec(const std::string& spec,
                                                            std::string& error) {
  if (spec == "canonical") return std::vector<std::int64_t>{};
  std::vector<std::int64_t> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      error = "bad residue list element: '" + item + "'";
      return std::nullopt;
    }
  }
  if (values.empty()) {
    error = "empty residue list";
    return std::nullopt;
  }
  return values;
}

RunReport build_search_report(std::int64_t e, Strategy strategy, const SearchConfig& config,
                              const SolveResult& result, bool timing, bool with_oracle) {
  RunReport r;
  r.e = e;
  echo_config(r, strategy, config, timing);
  r.stats = result.stats;
  if (!timing) r.stats.elapsed_ms = 0.0;
  r.frontier.assign(result.frontier.begin(), result.frontier.end());
  if (result.certificate) {
    r.status = "certificate";
    r.certificate = *result.certificate;
    r.certificate->stats = SearchStats{};
    const VerifyResult v = verify_certificate(e, *result.certificate);
    r.verified = v.pass;
    r.verify_failures = v.failures;
  } else {
    r.status = "not-found";
  }
  attach_oracle(r, e, with_oracle);
  return r;
}

RunReport build_partition_report(std::int64_t e, const SearchConfig& config,
                                 const std::vector<std::int64_t>& b,
                                 const PartitionOutcome& outcome, bool timing,
                                 bool with_oracle) {
  RunReport r;
  r.e = e;
  echo_config(r, Strategy::partition, config, timing);
  r.has_partition = true;
  r.partition_b = b;
  r.partition_variant = outcome.variant;
  r.partition_h = outcome.h;
  r.descending_ok = outcome.descending_ok;
  r.ascending_ok = outcome.ascending_ok;
  r.descending_margin = outcome.descending_margin.get_str();
  r.ascending_margin = outcome.ascending_margin.get_str();
  r.partition_signs = outcome.signs;
  if (outcome.certificate) {
    r.status = "certificate";
    r.certificate = *outcome.certificate;
    r.certificate->stats = SearchStats{};
    const VerifyResult v = verify_certificate(e, *outcome.certificate);
    r.verified = v.pass;
    r.verify_failures = v.failures;
  } else {
    r.status = "condition-failed";
  }
  attach_oracle(r, e, with_oracle);
  return r;
}

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err) {
  // config invariant, independent of which strategy consumes it
  if (!(args.config.band_ratio > 0.0 && args.config.band_ratio <= 1.0)) {
    err << "gbs: band_ratio must lie in (0, 1]\n";
    return kExitUsage;
  }
  if (args.config.max_nodes == 0) {
    err << "gbs: max-nodes must be positive\n";
    return kExitUsage;
  }
  try {
    const PrimeBasis basis = build_basis(args.e);
    if (args.strategy == Strategy::partition) {
      std::string perr;
      const auto spec = parse_residue_spec(args.residues_spec, perr);
      if (!spec) {
        err << "gbs: " << perr << "\n";
        return kExitUsage;
      }
      const std::vector<std::int64_t> b = spec->empty() ? canonical_b(args.e, basis) : *spec;
      PartitionOutcome outcome;
      try {
        outcome = solve_sign_partition(args.e, basis, b);
      } catch (const std::invalid_argument& ex) {
        err << "gbs: " << ex.what() << "\n";
        return kExitUsage;
      }
      const RunReport rep = build_partition_report(args.e, args.config, b, outcome,
                                                   args.timing, args.with_oracle);
      emit(rep, args.json, out);
      return rep.status == "certificate" && rep.verified ? kExitSuccess : kExitUnsatisfied;
    }
    ResidueDomain dom = build_domain(basis);
    SearchConfig cfg = args.config;
    cfg.strategy = args.strategy;
    const SolveResult res = run_strategy(dom, args.strategy, cfg);
    const RunReport rep =
        build_search_report(args.e, args.strategy, cfg, res, args.timing, args.with_oracle);
    emit(rep, args.json, out);
    return rep.status == "certificate" && rep.verified ? kExitSuccess : kExitUnsatisfied;
  } catch (const std::invalid_argument& ex) {
    err << "gbs: " << ex.what() << "\n";
    return kExitUsage;
  }
}

int cmd_verify_range(const VerifyRangeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.from <= 7 || args.to < args.from || args.step < 1) {
    err << "gbs: need 7 < from <= to and step >= 1\n";
    return kExitUsage;
  }
  std::vector<std::int64_t> targets;
  for (std::int64_t e = args.from; e <= args.to; e += args.step) targets.push_back(e);

  std::vector<RangeRow> rows(targets.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(args.threads, static_cast<unsigned>(targets.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < targets.size(); ++i)
      rows[i] = sweep_one(targets[i], args.strategy, args.max_nodes);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= targets.size()) break;
          rows[i] = sweep_one(targets[i], args.strategy, args.max_nodes);
        }
      }));
    }
    for (auto& f : pool) f.get();
  }

  std::ofstream file;
  std::ostream* sink = nullptr;
  if (!open_sink(args.out_path, out, file, sink, err)) return kExitUsage;
  *sink << "# gbs-verify-csv v1\n";
  *sink << "e,strategy,d,q1,q2,nodes,time_ms,oracle_min_d\n";
  bool all_ok = true;
  for (const RangeRow& row : rows) {
    all_ok = all_ok && row.verified;
    *sink << row.e << ',' << row.strategy << (row.verified ? "" : "!unverified") << ','
          << row.d << ',' << row.q1 << ',' << row.q2 << ',' << row.nodes << ','
          << std::fixed << std::setprecision(3) << row.time_ms << std::defaultfloat << ',';
    if (row.oracle_min) *sink << *row.oracle_min;
    *sink << "\n";
  }
  return all_ok ? kExitSuccess : kExitUnsatisfied;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  static const std::vector<std::pair<std::int64_t, std::int64_t>> fixtures = {
      {68, 15}, {188, -105}, {273, 206}, {368, -231}};
  static const std::vector<std::int64_t> targets = {68, 188, 273, 368};

  std::ofstream file;
  std::ostream* sink = nullptr;
  if (!open_sink(args.out_path, out, file, sink, err)) return kExitUsage;

  *sink << "# gbs-bench-csv v1\n";
  bool fixtures_ok = true;
  if (args.fixtures) {
    for (const auto& [e, d] : fixtures) {
      const Certificate cert = certificate_from_d(e, d, "fixture");
      const VerifyResult v = verify_certificate(e, cert);
      fixtures_ok = fixtures_ok && v.pass;
      *sink << "# fixture e=" << e << " d=" << d << " q1=" << cert.q1 << " q2=" << cert.q2
            << (v.pass ? " ok" : " FAIL") << "\n";
    }
  }
  *sink << "e,strategy,solved,d,nodes,time_ms\n";
  static const std::vector<Strategy> strategies = {Strategy::exhaustive, Strategy::forward,
                                                   Strategy::band};
  for (const std::int64_t e : targets) {
    for (const Strategy strat : strategies) {
      const PrimeBasis basis = build_basis(e);
      ResidueDomain dom = build_domain(basis);
      SearchConfig cfg;
      cfg.strategy = strat;
      cfg.seed = args.seed;
      cfg.max_nodes = args.max_nodes;
      const SolveResult res = run_strategy(dom, strat, cfg);
      *sink << e << ',' << strategy_name(strat) << ',' << (res.certificate ? 1 : 0) << ',';
      if (res.certificate) *sink << res.certificate->d;
      *sink << ',' << res.stats.nodes << ',' << std::fixed << std::setprecision(3)
            << res.stats.elapsed_ms << std::defaultfloat << "\n";
    }
  }
  return fixtures_ok ? kExitSuccess : kExitUnsatisfied;
}

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  if (args.depth < 1) {
    err << "gbs: depth must be at least 1\n";
    return kExitUsage;
  }
  if (args.format != "subset-sum" && args.format != "csp") {
    err << "gbs: format must be subset-sum or csp\n";
    return kExitUsage;
  }
  try {
    const PrimeBasis basis = build_basis(args.e);
    ResidueDomain dom = build_domain(basis, 1);
    std::ostringstream text;
    text << "GBS1 " << args.format << ' ' << args.e << ' ' << basis.k << "\n";
    text << "P " << basis.P.get_str() << "\n";
    for (std::size_t i = 0; i < basis.k; ++i) {
      const std::uint64_t size = dom.rows[i].total_size;
      const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(args.depth, size));
      dom.ensure(i, take);
      text << "ROW " << basis.primes[i] << ' ' << basis.weights_unit[i].get_str() << " :";
      for (std::size_t j = 0; j < take; ++j) text << ' ' << dom.rows[i].terms[j].b;
      text << "\n";
    }
    if (args.format == "subset-sum") {
      std::string perr;
      const auto spec = parse_residue_spec(args.residues_spec, perr);
      if (!spec) {
        err << "gbs: " << perr << "\n";
        return kExitUsage;
      }
      std::vector<std::int64_t> b = spec->empty() ? canonical_b(args.e, basis) : *spec;
      if (b.size() != basis.k) {
        err << "gbs: need " << basis.k << " residues for the bounds\n";
        return kExitUsage;
      }
      std::vector<mpz_class> w(basis.k);
      for (std::size_t i = 0; i < basis.k; ++i) w[i] = basis.weights_unit[i] * b[i];
      const auto [lo, hi] = knapsack_bounds(args.e, w);
      text << "BOUNDS " << lo.get_str() << ' ' << hi.get_str() << "\n";
    }
    std::ofstream file;
    std::ostream* sink = nullptr;
    if (!open_sink(args.out_path, out, file, sink, err)) return kExitUsage;
    *sink << text.str();
    return kExitSuccess;
  } catch (const std::invalid_argument& ex) {
    err << "gbs: " << ex.what() << "\n";
    return kExitUsage;
  }
}

int cmd_probe(const ProbeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.from <= 7 || args.to < args.from) {
    err << "gbs: need 7 < from <= to\n";
    return kExitUsage;
  }
  std::ofstream file;
  std::ostream* sink = nullptr;
  if (!open_sink(args.out_path, out, file, sink, err)) return kExitUsage;
  *sink << "# gbs-probe-csv v1\n";
  *sink << "e,k,solved,min_max_abs_b,r_min,nodes\n";
  bool all_solved = true;
  for (std::int64_t e = args.from; e <= args.to; ++e) {
    const ProbeRecord rec = probe_statement4(e, args.max_nodes);
    all_solved = all_solved && rec.solved;
    *sink << rec.e << ',' << rec.k << ',' << (rec.solved ? 1 : 0) << ',';
    if (rec.solved) *sink << rec.min_max_abs_b;
    *sink << ',';
    if (rec.solved) *sink << std::setprecision(12) << rec.r_min << std::defaultfloat;
    *sink << ',' << rec.nodes << "\n";
  }
  return all_solved ? kExitSuccess : kExitUnsatisfied;
}

} // namespace gbs::cli
