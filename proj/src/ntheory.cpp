#include "gbs/ntheory.hpp"

#include <cmath>
#include <stdexcept>

namespace gbs {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::int64_t> primes_upto(std::int64_t n) {
  std::vector<std::int64_t> primes;
  if (n < 2) return primes;
  std::vector<char> mark(static_cast<std::size_t>(n) + 1, 1);
  mark[0] = mark[1] = 0;
  for (std::int64_t i = 2; i * i <= n; ++i)
    if (mark[static_cast<std::size_t>(i)])
      for (std::int64_t j = i * i; j <= n; j += i)
        mark[static_cast<std::size_t>(j)] = 0;
  for (std::int64_t i = 2; i <= n; ++i)
    if (mark[static_cast<std::size_t>(i)]) primes.push_back(i);
  return primes;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Strong-probable-prime check for one witness.
bool sprp(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) { d >>= 1; ++r; }
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};

// This witness set decides primality for every n < 2^64.
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 67 * 67) return true;
  for (std::uint64_t a : kWitnesses)
    if (!sprp(n, a)) return false;
  return true;
}

std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
  if (m < 2) return std::nullopt;
  a %= m;
  if (a < 0) a += m;
  // Extended Euclid on (a, m); keeps only the coefficient of a.
  std::int64_t r0 = a, r1 = m, x0 = 1, x1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t x2 = x0 - q * x1;
    r0 = r1; r1 = r2;
    x0 = x1; x1 = x2;
  }
  if (r0 != 1) return std::nullopt;
  x0 %= m;
  if (x0 <= 0) x0 += m;
  return x0;
}

std::optional<std::int64_t> mod_inverse(const mpz_class& a, std::int64_t m) {
  if (m < 2) return std::nullopt;
  mpz_class mm(static_cast<long>(m));
  mpz_class r = a % mm;
  return mod_inverse(r.get_si(), m);
}

int prime_power_multiplicity(std::int64_t e, std::int64_t p) {
  if (p < 2) throw std::invalid_argument("prime_power_multiplicity: p must be prime");
  int a = 0;
  while (e != 0 && e % p == 0) { e /= p; ++a; }
  return a;
}

PrimeBasis build_basis(std::int64_t e) {
  if (e <= 7) throw std::invalid_argument("build_basis: e must exceed 7");
  PrimeBasis basis;
  basis.e = e;
  basis.primes = primes_upto(isqrt(2 * e));
  basis.k = basis.primes.size();
  basis.P = 1;
  for (std::int64_t p : basis.primes) basis.P *= static_cast<long>(p);
  basis.cofactors.reserve(basis.k);
  basis.inverses.reserve(basis.k);
  basis.weights_unit.reserve(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) {
    mpz_class cof = basis.P / static_cast<long>(basis.primes[i]);
    auto inv = mod_inverse(cof, basis.primes[i]);
    if (!inv) throw std::logic_error("build_basis: cofactor not invertible");
    basis.cofactors.push_back(cof);
    basis.inverses.push_back(*inv);
    basis.weights_unit.emplace_back(cof * static_cast<long>(*inv));
  }
  return basis;
}

mpz_class crt_sum(const PrimeBasis& basis, const std::vector<std::int64_t>& signed_residues) {
  if (signed_residues.size() != basis.k)
    throw std::invalid_argument("crt_sum: selection length does not match basis size");
  mpz_class d = 0;
  for (std::size_t i = 0; i < basis.k; ++i)
    d += basis.weights_unit[i] * static_cast<long>(signed_residues[i]);
  return d;
}

mpz_class reduce_symmetric(const mpz_class& x, const mpz_class& modulus) {
  if (modulus < 1) throw std::invalid_argument("reduce_symmetric: modulus must be positive");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()); // r in [0, P)
  // Map (P/2, P) to negatives; P/2 itself stays positive.
  if (2 * r > modulus) r -= modulus;
  return r;
}

} // namespace gbs
