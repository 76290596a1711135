#include <doctest.h>

#include <random>

#include "gbs/domain.hpp"
#include "gbs/ntheory.hpp"

using namespace gbs;

namespace {

std::vector<std::int64_t> bs(const std::vector<CandidateTerm>& terms) {
  std::vector<std::int64_t> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.b);
  return out;
}

} // namespace

TEST_CASE("admissibility blocks both mirror residues") {
  // e=16: row p=5 blocks b = 1 and b = 4 (mod 5)
  CHECK(is_admissible(16, 5, 0));
  CHECK_FALSE(is_admissible(16, 5, 1));
  CHECK(is_admissible(16, 5, 2));
  CHECK(is_admissible(16, 5, 3));
  CHECK_FALSE(is_admissible(16, 5, 4));
  CHECK_FALSE(is_admissible(16, 5, 6));  // 6 = 1 (mod 5)
  CHECK_FALSE(is_admissible(16, 5, -1)); // -1 = 4 (mod 5)
  CHECK(is_admissible(16, 5, -2));
  // e=16: row p=2 blocks the even class
  CHECK_FALSE(is_admissible(16, 2, 0));
  CHECK(is_admissible(16, 2, 1));
  CHECK(is_admissible(16, 2, -13));
}

TEST_CASE("zero is admissible exactly when p does not divide e") {
  CHECK_FALSE(is_admissible(16, 2, 0));
  CHECK(is_admissible(16, 3, 0));
  CHECK(is_admissible(16, 5, 0));
  CHECK_FALSE(is_admissible(68, 2, 0));
  CHECK(is_admissible(68, 11, 0));
  CHECK_FALSE(is_admissible(120, 5, 0));
}

TEST_CASE("admissibility is symmetric in the sign of b") {
  std::mt19937_64 rng(777001);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t e = 8 + static_cast<std::int64_t>(rng() % 100000);
    const auto primes = build_basis(e).primes;
    const std::int64_t p = primes[rng() % primes.size()];
    const std::int64_t b = static_cast<std::int64_t>(rng() % 200001) - 100000;
    CHECK(is_admissible(e, p, b) == is_admissible(e, p, -b));
  }
}

TEST_CASE("canonical residues match the worked columns") {
  CHECK(canonical_b(68, build_basis(68)) == std::vector<std::int64_t>{35, 66, 65, 63, 66});
  CHECK(canonical_b(16, build_basis(16)) == std::vector<std::int64_t>{3, 15, 15});
  CHECK(canonical_b(13, build_basis(13)) == std::vector<std::int64_t>{12, 12, 10});
  CHECK(canonical_b(8, build_basis(8)) == std::vector<std::int64_t>{3, 6});
  // every canonical residue is admissible in its own row
  for (const std::int64_t e : {8, 9, 16, 68, 120, 188, 273, 368, 997}) {
    const PrimeBasis basis = build_basis(e);
    const auto b = canonical_b(e, basis);
    REQUIRE(b.size() == basis.k);
    for (std::size_t i = 0; i < basis.k; ++i) CHECK(is_admissible(e, basis.primes[i], b[i]));
  }
}

TEST_CASE("weight_of multiplies by the row unit") {
  const PrimeBasis b = build_basis(16);
  CHECK(weight_of(b, 0, 1) == 15);
  CHECK(weight_of(b, 0, -1) == -15);
  CHECK(weight_of(b, 1, 3) == 30);
  CHECK(weight_of(b, 2, -2) == -12);
}

TEST_CASE("row enumeration follows the fixed candidate order for e=16") {
  const PrimeBasis basis = build_basis(16);
  CHECK(bs(enumerate_row(basis, 0, 5)) == std::vector<std::int64_t>{1, -1, 3, -3, 5});
  CHECK(bs(enumerate_row(basis, 1, 5)) == std::vector<std::int64_t>{0, 3, -3, 6, -6});
  CHECK(bs(enumerate_row(basis, 2, 5)) == std::vector<std::int64_t>{0, 2, -2, 3, -3});
}

TEST_CASE("row sizes count admissible candidates inside the window") {
  // e=16, window 14: odd |b| for p=2; multiples of 3 plus zero for p=3
  const PrimeBasis basis = build_basis(16);
  ResidueDomain dom = build_domain(basis, 1);
  CHECK(dom.rows[0].total_size == 14);
  CHECK(dom.rows[1].total_size == 9);
  CHECK(dom.rows[2].total_size == 17);
  CHECK(row_total_size(16, 2) == 14);
  CHECK(row_total_size(16, 3) == 9);
  CHECK(row_total_size(16, 5) == 17);
  // a full enumeration agrees with the analytic count
  for (std::size_t i = 0; i < basis.k; ++i) {
    const auto all = enumerate_row(basis, i, static_cast<std::size_t>(dom.rows[i].total_size) + 5);
    CHECK(all.size() == static_cast<std::size_t>(dom.rows[i].total_size));
    for (const auto& t : all) {
      CHECK(is_admissible(16, basis.primes[i], t.b));
      CHECK(std::abs(t.b) <= 14);
    }
  }
}

TEST_CASE("position and value maps invert each other") {
  for (const std::int64_t e : {8, 16, 68, 120, 188, 997}) {
    const PrimeBasis basis = build_basis(e);
    for (std::size_t i = 0; i < basis.k; ++i) {
      const std::int64_t p = basis.primes[i];
      const std::int64_t size = row_total_size(e, p);
      const auto prefix = enumerate_row(basis, i, 40);
      for (std::size_t pos = 0; pos < prefix.size(); ++pos) {
        CHECK(row_b_at(e, p, pos) == prefix[pos].b);
        CHECK(row_position_of(e, p, prefix[pos].b) == pos);
      }
      if (size > 0) { // last position round-trips too
        const std::int64_t last = row_b_at(e, p, static_cast<std::size_t>(size - 1));
        CHECK(row_position_of(e, p, last) == static_cast<std::size_t>(size - 1));
      }
    }
  }
  CHECK_THROWS_AS(row_position_of(16, 2, 0), std::invalid_argument);  // inadmissible
  CHECK_THROWS_AS(row_position_of(16, 5, 6), std::invalid_argument);  // blocked class
  CHECK_THROWS_AS(row_position_of(16, 2, 15), std::invalid_argument); // outside window
}

TEST_CASE("domain materializes lazily through term()") {
  const PrimeBasis basis = build_basis(68);
  ResidueDomain dom = build_domain(basis, 2);
  const std::uint64_t before = dom.materialized;
  CHECK(before == 2 * basis.k);
  (void)dom.term(0, 9);
  CHECK(dom.materialized == before + 8);
  CHECK(dom.term(0, 9).b == dom.rows[0].terms[9].b);
  // term weights match weight_of
  for (std::size_t i = 0; i < basis.k; ++i)
    for (std::size_t pos = 0; pos < 6; ++pos) {
      const CandidateTerm& t = dom.term(i, pos);
      CHECK(t.w == weight_of(basis, i, t.b));
    }
}

TEST_CASE("index split separates divisor rows from the rest") {
  const PrimeBasis b68 = build_basis(68);
  const auto [s68, r68] = split_indexes(68, b68);
  CHECK(s68 == std::vector<std::size_t>{0});
  CHECK(r68 == std::vector<std::size_t>{1, 2, 3, 4});
  const PrimeBasis b120 = build_basis(120);
  const auto [s120, r120] = split_indexes(120, b120);
  CHECK(s120 == std::vector<std::size_t>{0, 1, 2});
  CHECK(r120 == std::vector<std::size_t>{3, 4, 5});
  // rows in index_S forbid zero, rows in index_R start with it
  ResidueDomain dom = build_domain(b120, 1);
  for (const std::size_t i : dom.index_S) {
    CHECK_FALSE(dom.rows[i].zero_allowed);
    CHECK(dom.term(i, 0).b != 0);
  }
  for (const std::size_t i : dom.index_R) {
    CHECK(dom.rows[i].zero_allowed);
    CHECK(dom.term(i, 0).b == 0);
  }
}

TEST_CASE("mean ordering sorts rows by average weight magnitude") {
  const PrimeBasis basis = build_basis(68);
  ResidueDomain dom = build_domain(basis);
  order_rows(dom, Ordering::basis_order);
  CHECK(dom.row_order == std::vector<std::size_t>{0, 1, 2, 3, 4});
  // depth-8 prefix sums of |w|: 73920, 36960, 36036, 7260, 4410
  order_rows(dom, Ordering::descending_row_mean);
  CHECK(dom.row_order == std::vector<std::size_t>{1, 0, 2, 3, 4});
  // basis order is restored on request
  order_rows(dom, Ordering::basis_order);
  CHECK(dom.row_order == std::vector<std::size_t>{0, 1, 2, 3, 4});
}
