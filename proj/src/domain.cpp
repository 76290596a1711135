#include "gbs/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace gbs {

bool is_admissible(std::int64_t e, std::int64_t p, std::int64_t b) {
  const std::int64_t rb = ((b % p) + p) % p;
  const std::int64_t re = e % p;
  return rb != re && rb != (p - re) % p;
}

std::vector<std::int64_t> canonical_b(std::int64_t e, const PrimeBasis& basis) {
  std::vector<std::int64_t> out;
  out.reserve(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) {
    const std::int64_t p = basis.primes[i];
    std::int64_t b;
    if (e % p != 0) {
      b = (e / p) * p;
    } else {
      std::int64_t pa = 1;
      for (int a = prime_power_multiplicity(e, p); a > 0; --a) pa *= p;
      b = (e / pa) * p + 1;
    }
    if (!is_admissible(e, p, b))
      throw std::logic_error("canonical residue failed admissibility");
    out.push_back(b);
  }
  return out;
}

mpz_class weight_of(const PrimeBasis& basis, std::size_t i, std::int64_t b) {
  return basis.weights_unit[i] * b;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indexes(std::int64_t e, const PrimeBasis& basis) {
  std::vector<std::size_t> divides, coprime;
  for (std::size_t i = 0; i < basis.k; ++i) {
    (e % basis.primes[i] == 0 ? divides : coprime).push_back(i);
  }
  return {divides, coprime};
}

namespace {

// |{x in [1, n] : x == r (mod p)}| for 0 <= r < p
std::int64_t count_congruent(std::int64_t n, std::int64_t p, std::int64_t r) {
  if (r == 0) return n / p;
  if (r > n) return 0;
  return (n - r) / p + 1;
}

// Admissible magnitudes in [1, n].
std::int64_t count_admissible(std::int64_t e, std::int64_t p, std::int64_t n) {
  if (n <= 0) return 0;
  const std::int64_t r1 = e % p;
  const std::int64_t r2 = (p - r1) % p;
  std::int64_t blocked = count_congruent(n, p, r1);
  if (r2 != r1) blocked += count_congruent(n, p, r2);
  return n - blocked;
}

std::int64_t row_size(std::int64_t e, std::int64_t p, bool zero_allowed) {
  // +m and -m are admissible together, so magnitudes pair up.
  return (zero_allowed ? 1 : 0) + 2 * count_admissible(e, p, e - 2);
}

Row make_row(std::int64_t e, std::int64_t p) {
  Row row;
  row.p = p;
  row.zero_allowed = (e % p != 0);
  row.total_size = row_size(e, p, row.zero_allowed);
  return row;
}

// Appends the next term in the fixed order; false when the row is done.
bool advance_row(Row& row, std::int64_t e, const mpz_class& u) {
  if (static_cast<std::int64_t>(row.terms.size()) >= row.total_size) return false;
  if (row.terms.empty() && row.zero_allowed) {
    row.terms.push_back(CandidateTerm{0, mpz_class(0)});
    return true;
  }
  if (row.emit_negative) {
    row.terms.push_back(CandidateTerm{-row.next_magnitude, u * -row.next_magnitude});
    row.emit_negative = false;
    ++row.next_magnitude;
    return true;
  }
  const std::int64_t limit = e - 2;
  while (row.next_magnitude <= limit && !is_admissible(e, row.p, row.next_magnitude))
    ++row.next_magnitude;
  if (row.next_magnitude > limit)
    throw std::logic_error("row size disagrees with generator");
  row.terms.push_back(CandidateTerm{row.next_magnitude, u * row.next_magnitude});
  row.emit_negative = true;
  return true;
}

} // namespace

void ResidueDomain::ensure(std::size_t i, std::size_t count) {
  Row& row = rows[i];
  const std::size_t want = std::min<std::size_t>(count, row.total_size);
  while (row.terms.size() < want) {
    if (!advance_row(row, basis.e, basis.weights_unit[i])) break;
    ++materialized;
  }
}

const CandidateTerm& ResidueDomain::term(std::size_t i, std::size_t pos) {
  ensure(i, pos + 1);
  return rows[i].terms[pos];
}

std::vector<CandidateTerm> enumerate_row(const PrimeBasis& basis, std::size_t i,
                                         std::size_t count) {
  Row row = make_row(basis.e, basis.primes[i]);
  const std::size_t want = std::min<std::size_t>(count, row.total_size);
  while (row.terms.size() < want) {
    if (!advance_row(row, basis.e, basis.weights_unit[i])) break;
  }
  return std::move(row.terms);
}

std::int64_t row_total_size(std::int64_t e, std::int64_t p) {
  return row_size(e, p, e % p != 0);
}

std::size_t row_position_of(std::int64_t e, std::int64_t p, std::int64_t b) {
  const bool zero_allowed = (e % p != 0);
  if (b == 0) {
    if (!zero_allowed) throw std::invalid_argument("zero not a member of this row");
    return 0;
  }
  const std::int64_t m = b < 0 ? -b : b;
  if (m > e - 2 || !is_admissible(e, p, m))
    throw std::invalid_argument("residue not a member of this row");
  // 1-based rank of m among admissible magnitudes
  const std::int64_t rank = count_admissible(e, p, m);
  std::size_t pos = (zero_allowed ? 1 : 0) + 2 * static_cast<std::size_t>(rank - 1);
  if (b < 0) ++pos;
  return pos;
}

std::int64_t row_b_at(std::int64_t e, std::int64_t p, std::size_t pos) {
  const bool zero_allowed = (e % p != 0);
  if (static_cast<std::int64_t>(pos) >= row_total_size(e, p))
    throw std::invalid_argument("row position out of range");
  if (zero_allowed) {
    if (pos == 0) return 0;
    --pos;
  }
  const std::int64_t rank = static_cast<std::int64_t>(pos / 2) + 1;
  const bool negative = (pos % 2) != 0;
  // Smallest m with count_admissible(m) == rank; count jumps exactly at
  // admissible m, so the leftmost crossing is the member itself.
  std::int64_t lo = 1, hi = e - 2;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (count_admissible(e, p, mid) >= rank)
      hi = mid;
    else
      lo = mid + 1;
  }
  return negative ? -lo : lo;
}

ResidueDomain build_domain(const PrimeBasis& basis, std::size_t initial_depth) {
  ResidueDomain domain;
  domain.basis = basis;
  std::tie(domain.index_S, domain.index_R) = split_indexes(basis.e, basis);
  domain.rows.reserve(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) {
    domain.rows.push_back(make_row(basis.e, basis.primes[i]));
    domain.row_order.push_back(i);
  }
  for (std::size_t i = 0; i < basis.k; ++i) domain.ensure(i, initial_depth);
  return domain;
}

void order_rows(ResidueDomain& domain, Ordering policy) {
  domain.row_order.resize(domain.rows.size());
  for (std::size_t i = 0; i < domain.rows.size(); ++i) domain.row_order[i] = i;
  if (policy == Ordering::basis_order) return;

  std::vector<mpz_class> sums(domain.rows.size(), mpz_class(0));
  for (std::size_t i = 0; i < domain.rows.size(); ++i) {
    for (const CandidateTerm& t : domain.rows[i].terms) sums[i] += abs(t.w);
  }
  std::stable_sort(domain.row_order.begin(), domain.row_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const std::size_t na = domain.rows[a].terms.size();
                     const std::size_t nb = domain.rows[b].terms.size();
                     if (na == 0) return false;
                     if (nb == 0) return sums[a] > 0;
                     // mean(a) > mean(b) without division
                     return sums[a] * static_cast<unsigned long>(nb) >
                            sums[b] * static_cast<unsigned long>(na);
                   });
}

} // namespace gbs
