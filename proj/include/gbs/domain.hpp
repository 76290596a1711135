#pragma once

// Admissible residue sets per basis row, canonical residue choices,
// weights, and row orderings for the search.
//
// A residue b is admissible for (e, p) when p divides neither e-b nor
// e+b; picking d = b (mod p) for an admissible b then keeps p out of
// both e-d and e+d.  Zero is admissible exactly when p does not
// divide e.

#include <cstdint>
#include <vector>

#include "gbs/ntheory.hpp"

namespace gbs {

struct CandidateTerm {
  std::int64_t b = 0; // signed residue choice
  mpz_class w;        // b * u_i for the owning row
};

bool is_admissible(std::int64_t e, std::int64_t p, std::int64_t b);

/// One choice per row by the closed-form rule: floor(e/p)*p when p
/// does not divide e, floor(e/p^a)*p + 1 when it does (a = multiplicity
/// of p in e).  Every returned value is admissibility-checked; a
/// failure throws (it would mean the rule itself is broken).
/// Values may exceed e-2; only the residue class matters.
std::vector<std::int64_t> canonical_b(std::int64_t e, const PrimeBasis& basis);

/// Weight of choosing residue b for row i: b * u_i.
mpz_class weight_of(const PrimeBasis& basis, std::size_t i, std::int64_t b);

// One per-row candidate list, generated lazily in a fixed order:
// 0 first (only when p does not divide e), then ascending |b| with the
// positive twin before the negative one.  Magnitudes stop at e-2.
struct Row {
  std::int64_t p = 0;
  bool zero_allowed = false;         // p does not divide e
  std::int64_t total_size = 0;       // full candidate count, computed up front
  std::vector<CandidateTerm> terms;  // materialized prefix
  // generator state
  std::int64_t next_magnitude = 1;
  bool emit_negative = false;
};

struct ResidueDomain {
  PrimeBasis basis;
  std::vector<Row> rows;             // basis order
  std::vector<std::size_t> index_S;  // rows whose p divides e
  std::vector<std::size_t> index_R;  // rows whose p does not
  std::vector<std::size_t> row_order; // search position -> basis row
  std::uint64_t materialized = 0;     // terms generated so far

  /// Extends row i to at least `count` terms (clamped to the row size).
  void ensure(std::size_t i, std::size_t count);
  const CandidateTerm& term(std::size_t i, std::size_t pos); // 0-based, materializes
};

/// Splits row indexes by divisibility of e: (I_S, I_R).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indexes(std::int64_t e, const PrimeBasis& basis);

/// First `count` candidates of row i in the fixed order; the whole row
/// when count exceeds its size.
std::vector<CandidateTerm> enumerate_row(const PrimeBasis& basis, std::size_t i, std::size_t count);

/// Number of candidates in the full row for prime p (|b| capped at e-2).
std::int64_t row_total_size(std::int64_t e, std::int64_t p);

/// Position of residue b within the row's fixed order, without
/// materializing anything; throws if b is not a member.
std::size_t row_position_of(std::int64_t e, std::int64_t p, std::int64_t b);

/// Inverse of row_position_of; throws if pos is past the end of the row.
std::int64_t row_b_at(std::int64_t e, std::int64_t p, std::size_t pos);

ResidueDomain build_domain(const PrimeBasis& basis, std::size_t initial_depth = 8);

enum class Ordering { basis_order, descending_row_mean };

/// Sets row_order.  descending_row_mean sorts rows by mean |w| over the
/// materialized prefix, largest first, ties keeping basis order.
void order_rows(ResidueDomain& domain, Ordering policy);

} // namespace gbs
