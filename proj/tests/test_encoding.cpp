#include <doctest.h>

#include <cstdlib>

#include "gbs/ntheory.hpp"
#include "gbs/oracle.hpp"
#include "gbs/search.hpp"

using namespace gbs;

namespace {

void check_exact(const PrimeBasis& basis, std::int64_t d) {
  const auto v = residues_from_d(basis, d);
  REQUIRE(v.size() == basis.k);
  mpz_class sum = 0;
  for (std::size_t i = 0; i < basis.k; ++i) {
    sum += basis.weights_unit[i] * v[i];
    CHECK((mpz_class(d) - v[i]) % basis.primes[i] == 0); // congruent per row
    CHECK(std::abs(v[i]) <= basis.e - 2);                // inside the window
  }
  CHECK(sum == d); // exact, not merely congruent mod P
}

} // namespace

TEST_CASE("encoding reproduces targets exactly across the window") {
  for (const std::int64_t e : {8, 16, 68, 188, 273, 368, 1000, 1999, 2000}) {
    const PrimeBasis basis = build_basis(e);
    for (const std::int64_t d :
         {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, std::int64_t{15},
          std::int64_t{-15}, e - 2, -(e - 2), e / 2, -(e / 3)}) {
      if (std::abs(d) > e - 2) continue;
      check_exact(basis, d);
    }
  }
}

TEST_CASE("encoding the e=68 reference offsets") {
  const PrimeBasis basis = build_basis(68);
  check_exact(basis, 15);
  check_exact(basis, -15);
  const auto v = residues_from_d(basis, 15);
  // admissible target: the certificate must verify end to end
  const Certificate c = certificate_from_residues(basis, v, "test");
  CHECK(c.d == 15);
  CHECK(c.q1 == 53);
  CHECK(c.q2 == 83);
  CHECK(verify_certificate(68, c).pass);
}

TEST_CASE("encoding covers every oracle pair up to 300") {
  for (std::int64_t e = 8; e <= 300; ++e) {
    const PrimeBasis basis = build_basis(e);
    const std::int64_t root = isqrt(2 * e);
    for (const auto& [q1, q2] : all_goldbach_pairs(2 * e)) {
      const std::int64_t d = e - q1;
      for (const std::int64_t target : {d, -d}) {
        if (std::abs(target) > e - 2) continue; // q1 = 2 pairs only
        check_exact(basis, target);
        // when both primes clear the sieve bound the target is admissible
        // and the full certificate verifies
        if (q1 > root) {
          const Certificate c = certificate_from_residues(
              basis, residues_from_d(basis, target), "test");
          const VerifyResult res = verify_certificate(e, c);
          CHECK(res.pass);
        }
      }
    }
  }
}

TEST_CASE("targets outside any window capacity are rejected") {
  const PrimeBasis basis = build_basis(8);
  CHECK_THROWS_AS(residues_from_d(basis, 1000), std::overflow_error);
  CHECK_THROWS_AS(residues_from_d(basis, -4000), std::overflow_error);
  // every in-window target for e=8 still encodes
  for (std::int64_t d = -6; d <= 6; ++d) check_exact(basis, d);
}

TEST_CASE("certificate construction flags nothing for window-sized residues") {
  const PrimeBasis basis = build_basis(68);
  for (std::int64_t d = -66; d <= 66; ++d) {
    const auto v = residues_from_d(basis, d);
    const Certificate c = certificate_from_residues(basis, v, "test");
    CHECK(c.oversized_rows.empty());
    CHECK(c.d == d);
    CHECK(c.q1 == 68 - d);
    CHECK(c.q2 == 68 + d);
  }
}
