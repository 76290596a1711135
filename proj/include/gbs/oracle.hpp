#pragma once

// Brute-force ground truth: direct scans over d and over prime pairs,
// independent of the CRT construction.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gbs {

struct Decomposition {
  std::int64_t e = 0;
  std::int64_t d = 0;  // minimal |d|, non-negative by the scan order
  std::int64_t q1 = 0; // e - d
  std::int64_t q2 = 0; // e + d
};

/// Scans d = 0, 1, 2, ... up to e-2 and returns the first d with both
/// e-d and e+d prime.  Empty only if no pair exists in the window.
std::optional<Decomposition> brute_force_min_d(std::int64_t e);

/// Every unordered prime pair (q1, q2), q1 <= q2, with q1 + q2 = two_e,
/// ascending by q1.
std::vector<std::pair<std::int64_t, std::int64_t>> all_goldbach_pairs(std::int64_t two_e);

} // namespace gbs
