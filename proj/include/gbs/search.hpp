#pragma once

// Tree searches over signed candidate selections, the sign-partition
// shortcut, certificate construction and verification, and the
// smallest-residue probe.
//
// A selection picks one signed residue per basis row; its weighted sum
// d is feasible when |d| <= e-2, which forces e-d and e+d to be a
// prime pair (no basis prime divides either).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbs/domain.hpp"
#include "gbs/ntheory.hpp"

namespace gbs {

struct SignedChoice {
  std::size_t index = 0; // position within the row's fixed candidate order
  int sign = 1;          // sign of the chosen b; +1 when b == 0
};

struct SignedSelection {
  std::vector<SignedChoice> choice; // one per basis row, basis order
};

struct SearchStats {
  std::uint64_t nodes = 0;        // assignments evaluated
  std::uint64_t backtracks = 0;   // cursor wraps carried to an earlier row
  std::uint64_t widenings = 0;    // per-row depth extensions
  std::uint64_t materialized = 0; // candidate terms generated
  double elapsed_ms = 0.0;
};

struct Certificate {
  std::int64_t e = 0;
  std::size_t k = 0;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> residues; // signed s_i * b_i, basis order
  std::int64_t d = 0;                 // exact signed sum of residue weights
  std::int64_t q1 = 0;                // e - d
  std::int64_t q2 = 0;                // e + d
  std::string strategy;
  std::vector<std::size_t> oversized_rows; // rows whose |b| exceeds e-2
  SearchStats stats;
};

enum class Strategy { exhaustive, forward, band, partition, residue_scan };

std::string strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct SearchConfig {
  Strategy strategy = Strategy::exhaustive;
  Ordering ordering = Ordering::basis_order;
  std::uint64_t seed = 0;
  double band_ratio = 0.98;  // alignment threshold relative to the anchor |w|
  int widen_scale = 2;       // depth_i += widen_scale * rand(1, k)
  std::uint64_t max_nodes = 10'000'000;
  bool prune = true;
  std::size_t explored_cap = std::size_t{1} << 20; // forward-checking memory cap
};

struct SolveResult {
  std::optional<Certificate> certificate;
  SearchStats stats;
  std::vector<std::size_t> frontier; // cursor per basis row at exit
};

/// Depth-first odometer over the full candidate lists, last row advanced
/// first, feasibility tested after every step.  Complete up to max_nodes.
SolveResult solve_exhaustive(ResidueDomain& domain, const SearchConfig& config);

/// Restarting walk under per-row depth limits that widen by a seeded
/// random rule each round; previously seen cursor vectors are skipped
/// via a bounded hash set.  Deterministic for a fixed seed.
SolveResult solve_forward_checking(ResidueDomain& domain, const SearchConfig& config);

/// Orders rows by descending mean |w|, then for each anchor candidate of
/// the first row aligns every other row to the first candidate with
/// |w| >= band_ratio * |anchor w| and sweeps the boxed window exhaustively.
SolveResult solve_band_heuristic(ResidueDomain& domain, const SearchConfig& config);

/// Scans targets t = 0, +1, -1, +2, ... across the feasibility window and
/// returns the first t admissible at every row, encoded as an exact-sum
/// selection.  Complete over the window; seed-independent.
SolveResult solve_residue_scan(ResidueDomain& domain, const SearchConfig& config);

// One sign-partition attempt on explicit non-negative weights: sort,
// take the shortest prefix crossing half the total (descending variant)
// or the longest prefix staying under half (ascending), flip everything
// else negative.  One window bound holds by construction, the other
// exactly when margin >= 0.
struct PartitionVariant {
  std::vector<std::size_t> order; // sorted position -> input index
  std::vector<char> x;            // per input index, 1 = kept positive
  std::size_t h = 0;              // prefix length in sorted order
  mpz_class d;                    // 2 * prefix_h - total
  mpz_class margin;               // slack of the conditional bound
  bool ok = false;                // margin >= 0
};

PartitionVariant partition_descending(std::int64_t e, const std::vector<mpz_class>& w);
PartitionVariant partition_ascending(std::int64_t e, const std::vector<mpz_class>& w);

struct PartitionOutcome {
  std::optional<Certificate> certificate;
  std::string variant;  // "descending" or "ascending" when solved
  std::size_t h = 0;    // prefix length of the variant that produced d
  bool descending_ok = false;
  bool ascending_ok = false;
  mpz_class descending_margin;
  mpz_class ascending_margin;
  std::vector<int> signs; // per basis row, +1 / -1, set when solved
};

/// Runs the descending variant on w_i = b_i * u_i, falling back to the
/// ascending one; b entries must be non-negative and admissible.
PartitionOutcome solve_sign_partition(std::int64_t e, const PrimeBasis& basis,
                                      const std::vector<std::int64_t>& b);

/// Interval that 2 * sum(w_i * x_i) must occupy, in doubled form:
/// [sum(w) - (e-2), sum(w) + (e-2)].
std::pair<mpz_class, mpz_class> knapsack_bounds(std::int64_t e,
                                                const std::vector<mpz_class>& w);

struct VerifyResult {
  bool pass = false;
  std::vector<std::string> failures; // named failed checks
};

/// Recomputes everything from scratch: basis, weighted sum, window,
/// per-row congruence and admissibility, and primality of e-d and e+d.
VerifyResult verify_certificate(std::int64_t e, const Certificate& cert);

/// Signed residues v_i == d (mod p_i), |v_i| <= e-2, whose weighted sum
/// is exactly d (defect folded away row by row, the p=2 row last).
/// Admissibility is NOT required of d; verification will flag it.
std::vector<std::int64_t> residues_from_d(const PrimeBasis& basis, std::int64_t d);

/// Positions of the given residues within each row's fixed order; throws
/// if a residue is not a member of its row.
SignedSelection selection_from_residues(const PrimeBasis& basis,
                                        const std::vector<std::int64_t>& residues);

std::vector<std::int64_t> residues_of_selection(const PrimeBasis& basis,
                                                const SignedSelection& sel);

Certificate certificate_from_residues(const PrimeBasis& basis,
                                      const std::vector<std::int64_t>& residues,
                                      const std::string& strategy);

Certificate certificate_from_d(std::int64_t e, std::int64_t d, const std::string& strategy);

struct ProbeRecord {
  std::int64_t e = 0;
  std::size_t k = 0;
  bool solved = false;
  std::int64_t min_max_abs_b = 0; // smallest max |b_i| over found selections
  double r_min = 0.0;             // k * ln(min_max_abs_b) / ln(e), 0 when b <= 1
  std::uint64_t nodes = 0;
};

/// Enumerates every feasible target in the window, builds for each a
/// selection with small residues, and reports the best max |b_i| found.
ProbeRecord probe_statement4(std::int64_t e, std::uint64_t max_nodes);

} // namespace gbs
