#include "gbs/oracle.hpp"

#include <mutex>
#include <stdexcept>

#include "gbs/ntheory.hpp"

namespace gbs {

namespace {

// Shared read-only sieve for the small range most scans live in;
// anything above the bound falls back to the deterministic test.
constexpr std::int64_t kSieveBound = 1 << 21;
std::vector<char> g_sieve;
std::once_flag g_sieve_once;

bool prime_cached(std::int64_t n) {
  if (n < 2) return false;
  if (n < kSieveBound) {
    std::call_once(g_sieve_once, [] {
      g_sieve.assign(kSieveBound, 1);
      g_sieve[0] = g_sieve[1] = 0;
      for (std::int64_t i = 2; i * i < kSieveBound; ++i) {
        if (!g_sieve[i]) continue;
        for (std::int64_t j = i * i; j < kSieveBound; j += i) g_sieve[j] = 0;
      }
    });
    return g_sieve[n] != 0;
  }
  return is_prime(static_cast<std::uint64_t>(n));
}

} // namespace

std::optional<Decomposition> brute_force_min_d(std::int64_t e) {
  if (e <= 3) throw std::invalid_argument("brute_force_min_d requires e > 3");
  for (std::int64_t d = 0; d <= e - 2; ++d) {
    if (prime_cached(e - d) && prime_cached(e + d))
      return Decomposition{e, d, e - d, e + d};
  }
  return std::nullopt;
}

std::vector<std::pair<std::int64_t, std::int64_t>> all_goldbach_pairs(std::int64_t two_e) {
  if (two_e < 8 || two_e % 2 != 0)
    throw std::invalid_argument("all_goldbach_pairs requires even input >= 8");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t q1 = 2; q1 <= two_e / 2; ++q1) {
    if (prime_cached(q1) && prime_cached(two_e - q1))
      out.emplace_back(q1, two_e - q1);
  }
  return out;
}

} // namespace gbs
