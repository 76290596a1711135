#pragma once

// Prime generation, deterministic primality, modular inverses and the
// CRT weight machinery used by the mirror-prime search.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace gbs {

/// Largest s with s*s <= n.
std::int64_t isqrt(std::int64_t n);

/// All primes in [2, n], ascending. Simple sieve.
std::vector<std::int64_t> primes_upto(std::int64_t n);

/// Deterministic for every n that fits in 64 bits: trial division for
/// small n, fixed-witness strong-probable-prime test above.
bool is_prime(std::uint64_t n);

/// Inverse of a modulo m, in [1, m-1]. Empty when gcd(a, m) != 1.
std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m);
std::optional<std::int64_t> mod_inverse(const mpz_class& a, std::int64_t m);

/// Exponent of p in e: the largest a with p^a | e.
int prime_power_multiplicity(std::int64_t e, std::int64_t p);

// The k = pi(sqrt(2e)) primes together with the primorial P, the
// cofactors P_i = P/p_i, their inverses P'_i mod p_i, and the unit
// weights u_i = P_i * P'_i.  Congruences: u_i = 1 (mod p_i) and
// u_i = 0 (mod p_j) for j != i, so d = sum of b_i * u_i solves
// d = b_i (mod p_i) for any residue choice b_i.
struct PrimeBasis {
  std::int64_t e = 0;
  std::size_t k = 0;
  std::vector<std::int64_t> primes;    // p_1 < ... < p_k
  mpz_class P;                         // primorial
  std::vector<mpz_class> cofactors;    // P_i
  std::vector<std::int64_t> inverses;  // P'_i, 0 < P'_i < p_i
  std::vector<mpz_class> weights_unit; // u_i = P_i * P'_i
};

/// Builds the basis for e > 7; throws std::invalid_argument otherwise.
PrimeBasis build_basis(std::int64_t e);

/// Exact signed CRT sum: sum of v_i * u_i where v_i = s_i * b_i is the
/// signed residue chosen for row i. Throws on length mismatch.
mpz_class crt_sum(const PrimeBasis& basis, const std::vector<std::int64_t>& signed_residues);

/// Representative of x mod modulus in (-modulus/2, modulus/2].
mpz_class reduce_symmetric(const mpz_class& x, const mpz_class& modulus);

} // namespace gbs
