#include "gbs/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace gbs {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::exhaustive: return "exhaustive";
    case Strategy::forward: return "forward";
    case Strategy::band: return "band";
    case Strategy::partition: return "partition";
    case Strategy::residue_scan: return "residue-scan";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "exhaustive") return Strategy::exhaustive;
  if (name == "forward") return Strategy::forward;
  if (name == "band") return Strategy::band;
  if (name == "partition") return Strategy::partition;
  if (name == "residue-scan") return Strategy::residue_scan;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a > 0 ? (a + b - 1) / b : -((-a) / b);
}

// Residue of x in (-p/2, p/2].
std::int64_t symmetric_residue(std::int64_t x, std::int64_t p) {
  std::int64_t r = ((x % p) + p) % p;
  if (2 * r > p) r -= p;
  return r;
}

// Odometer over domain.row_order: the last position advances first and
// wraps carry to earlier positions.  Partial sums are maintained
// incrementally; nothing in the walk ever re-sums a full assignment.
struct Walker {
  ResidueDomain& dom;
  std::int64_t window;
  std::vector<std::size_t> cur;   // cursor per order position
  std::vector<std::size_t> limit; // usable candidates per order position
  mpz_class d;

  explicit Walker(ResidueDomain& d0) : dom(d0), window(d0.basis.e - 2) {}

  std::size_t k() const { return dom.rows.size(); }

  const CandidateTerm& term(std::size_t pos, std::size_t idx) {
    return dom.term(dom.row_order[pos], idx);
  }

  void reset_at(const std::vector<std::size_t>& start) {
    cur = start;
    d = 0;
    for (std::size_t pos = 0; pos < k(); ++pos) d += term(pos, cur[pos]).w;
  }

  bool feasible() const { return d <= window && d >= -window; }

  std::uint64_t hash_cursors() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t v : cur) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::vector<std::size_t> cursors_basis_order() const {
    std::vector<std::size_t> out(k(), 0);
    for (std::size_t pos = 0; pos < k(); ++pos) out[dom.row_order[pos]] = cur[pos];
    return out;
  }

  // One step.  Returns false when the carry crosses floor_pos (the
  // reachable space is exhausted) or the prune counter hits the node
  // budget.  With prune, a positive-w candidate reached while d is
  // already past the window is counted, rejected and skipped straight
  // to its negative twin, without exploring anything beneath it — a
  // heuristic cut, so the complete strategy must not enable it.  With
  // explored, cursor vectors whose hash is in the set are passed over
  // while scanning a row.
  bool advance(std::size_t floor_pos, bool prune, SearchStats& stats,
               const std::unordered_set<std::uint64_t>* explored, std::uint64_t max_nodes) {
    std::size_t h = k() - 1;
    for (;;) {
      d -= term(h, cur[h]).w;
      ++cur[h];
      if (explored != nullptr) {
        while (cur[h] < limit[h] && explored->count(hash_cursors()) != 0) ++cur[h];
      }
      if (cur[h] >= limit[h]) {
        cur[h] = 0;
        d += term(h, 0).w;
        ++stats.backtracks;
        if (h == floor_pos) return false;
        --h;
        continue;
      }
      d += term(h, cur[h]).w;
      if (prune && d > window && term(h, cur[h]).w > 0) {
        if (stats.nodes >= max_nodes) return false;
        ++stats.nodes; // reached, rejected, skipped in one motion
        continue;
      }
      return true;
    }
  }
};

Certificate certificate_from_walker(Walker& wk, const std::string& strategy) {
  std::vector<std::int64_t> residues(wk.k(), 0);
  for (std::size_t pos = 0; pos < wk.k(); ++pos)
    residues[wk.dom.row_order[pos]] = wk.term(pos, wk.cur[pos]).b;
  return certificate_from_residues(wk.dom.basis, residues, strategy);
}

void finish(SolveResult& res, ResidueDomain& dom, Walker& wk, bool found,
            const std::string& strategy, Clock::time_point t0) {
  res.stats.materialized = dom.materialized;
  res.stats.elapsed_ms = ms_since(t0);
  res.frontier = wk.cursors_basis_order();
  if (found) {
    Certificate c = certificate_from_walker(wk, strategy);
    c.stats = res.stats;
    res.certificate = std::move(c);
  }
}

// Row-local candidate count, clamped to size_t.
std::size_t full_size(const ResidueDomain& dom, std::size_t row) {
  return static_cast<std::size_t>(dom.rows[row].total_size);
}

} // namespace

SolveResult solve_exhaustive(ResidueDomain& domain, const SearchConfig& config) {
  const auto t0 = Clock::now();
  order_rows(domain, config.ordering);
  SolveResult res;
  Walker wk(domain);
  const std::size_t k = wk.k();
  wk.limit.resize(k);
  for (std::size_t pos = 0; pos < k; ++pos)
    wk.limit[pos] = full_size(domain, domain.row_order[pos]);
  wk.reset_at(std::vector<std::size_t>(k, 0));
  bool found = false;
  for (;;) {
    ++res.stats.nodes;
    if (wk.feasible()) {
      found = true;
      break;
    }
    if (res.stats.nodes >= config.max_nodes) break;
    // never pruned: this strategy promises the first feasible selection
    // in the fixed candidate order, which a subtree cut would break
    if (!wk.advance(0, false, res.stats, nullptr, config.max_nodes)) break;
  }
  finish(res, domain, wk, found, "exhaustive", t0);
  return res;
}

SolveResult solve_forward_checking(ResidueDomain& domain, const SearchConfig& config) {
  const auto t0 = Clock::now();
  order_rows(domain, config.ordering);
  SolveResult res;
  Walker wk(domain);
  const std::size_t k = wk.k();
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> depth(k, 1);
  std::vector<std::size_t> full(k);
  for (std::size_t pos = 0; pos < k; ++pos)
    full[pos] = full_size(domain, domain.row_order[pos]);

  std::unordered_set<std::uint64_t> explored;
  std::deque<std::uint64_t> fifo;
  auto remember = [&](std::uint64_t h) {
    if (!explored.insert(h).second) return;
    fifo.push_back(h);
    if (fifo.size() > config.explored_cap) {
      explored.erase(fifo.front());
      fifo.pop_front();
    }
  };

  bool found = false;
  bool out_of_budget = false;
  for (;;) {
    bool was_full = true;
    for (std::size_t pos = 0; pos < k; ++pos) {
      if (depth[pos] != full[pos]) was_full = false;
      const std::size_t draw = static_cast<std::size_t>(rng() % k) + 1; // rand(1, k)
      const std::size_t widened =
          std::min(depth[pos] + static_cast<std::size_t>(config.widen_scale) * draw, full[pos]);
      if (widened != depth[pos]) {
        depth[pos] = widened;
        ++res.stats.widenings;
      }
    }
    wk.limit = depth;
    wk.reset_at(std::vector<std::size_t>(k, 0));
    bool box_done = false;
    for (;;) {
      if (res.stats.nodes >= config.max_nodes) {
        out_of_budget = true;
        break;
      }
      ++res.stats.nodes;
      remember(wk.hash_cursors());
      if (wk.feasible()) {
        found = true;
        break;
      }
      if (res.stats.nodes >= config.max_nodes) {
        out_of_budget = true;
        break;
      }
      if (!wk.advance(0, config.prune, res.stats, &explored, config.max_nodes)) {
        box_done = true;
        break;
      }
    }
    if (found || out_of_budget) break;
    if (box_done && was_full) break; // whole space swept without success
  }
  finish(res, domain, wk, found, "forward", t0);
  return res;
}

SolveResult solve_band_heuristic(ResidueDomain& domain, const SearchConfig& config) {
  const auto t0 = Clock::now();
  if (!(config.band_ratio > 0.0 && config.band_ratio <= 1.0))
    throw std::invalid_argument("band_ratio must lie in (0, 1]");
  order_rows(domain, Ordering::descending_row_mean);
  SolveResult res;
  Walker wk(domain);
  const std::size_t k = wk.k();
  const std::size_t anchor_row_size = full_size(domain, domain.row_order[0]);
  const long ratio_scaled = std::lround(config.band_ratio * 1e6);

  wk.limit.assign(k, 1);
  std::vector<std::size_t> first_pos(k, 0); // band start per position, monotone over anchors
  bool found = false;
  bool out_of_budget = false;
  for (std::size_t a = 0; a < anchor_row_size && !found && !out_of_budget; ++a) {
    const mpz_class threshold = abs(wk.term(0, a).w) * ratio_scaled;
    for (std::size_t pos = 1; pos < k; ++pos) {
      const std::size_t size = full_size(domain, domain.row_order[pos]);
      while (first_pos[pos] + 1 < size &&
             abs(wk.term(pos, first_pos[pos]).w) * 1000000 < threshold)
        ++first_pos[pos];
      wk.limit[pos] = std::min(first_pos[pos] + 2, size);
    }
    wk.limit[0] = a + 1;
    std::vector<std::size_t> start(k, 0);
    start[0] = a;
    wk.reset_at(start);
    for (;;) {
      if (res.stats.nodes >= config.max_nodes) {
        out_of_budget = true;
        break;
      }
      ++res.stats.nodes;
      if (wk.feasible()) {
        found = true;
        break;
      }
      if (!wk.advance(1, config.prune, res.stats, nullptr, config.max_nodes)) break; // next anchor
    }
  }
  finish(res, domain, wk, found, "band", t0);
  return res;
}

SolveResult solve_residue_scan(ResidueDomain& domain, const SearchConfig& config) {
  const auto t0 = Clock::now();
  SolveResult res;
  const PrimeBasis& basis = domain.basis;
  const std::int64_t window = basis.e - 2;
  bool out_of_budget = false;
  for (std::int64_t m = 0; m <= window && !out_of_budget; ++m) {
    for (int half = 0; half < (m == 0 ? 1 : 2); ++half) {
      const std::int64_t t = half == 0 ? m : -m;
      if (res.stats.nodes >= config.max_nodes) {
        out_of_budget = true;
        break;
      }
      ++res.stats.nodes;
      bool ok = true;
      for (std::size_t i = 0; i < basis.k && ok; ++i)
        ok = is_admissible(basis.e, basis.primes[i], t);
      if (!ok) continue;
      Certificate c =
          certificate_from_residues(basis, residues_from_d(basis, t), "residue-scan");
      res.stats.materialized = domain.materialized;
      res.stats.elapsed_ms = ms_since(t0);
      c.stats = res.stats;
      res.certificate = std::move(c);
      return res;
    }
  }
  res.stats.materialized = domain.materialized;
  res.stats.elapsed_ms = ms_since(t0);
  return res;
}

PartitionVariant partition_descending(std::int64_t e, const std::vector<mpz_class>& w) {
  PartitionVariant v;
  const std::size_t n = w.size();
  v.order.resize(n);
  std::iota(v.order.begin(), v.order.end(), std::size_t{0});
  std::stable_sort(v.order.begin(), v.order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  mpz_class total = 0;
  for (const mpz_class& wi : w) total += wi;
  // shortest prefix whose doubled sum reaches the total
  mpz_class prefix = 0;
  std::size_t h = 0;
  while (h < n && 2 * prefix < total) {
    prefix += w[v.order[h]];
    ++h;
  }
  v.h = h;
  v.d = 2 * prefix - total;
  v.margin = total + (e - 2) - 2 * prefix; // d <= e-2; the lower bound is free
  v.ok = v.margin >= 0;
  v.x.assign(n, 0);
  for (std::size_t j = 0; j < h; ++j) v.x[v.order[j]] = 1;
  return v;
}

PartitionVariant partition_ascending(std::int64_t e, const std::vector<mpz_class>& w) {
  PartitionVariant v;
  const std::size_t n = w.size();
  v.order.resize(n);
  std::iota(v.order.begin(), v.order.end(), std::size_t{0});
  std::stable_sort(v.order.begin(), v.order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  mpz_class total = 0;
  for (const mpz_class& wi : w) total += wi;
  // longest prefix whose doubled sum stays under the total
  mpz_class prefix = 0;
  std::size_t h = 0;
  mpz_class run = 0;
  for (std::size_t j = 0; j < n; ++j) {
    run += w[v.order[j]];
    if (2 * run < total) {
      h = j + 1;
      prefix = run;
    } else {
      break; // prefix sums only grow
    }
  }
  v.h = h;
  v.d = 2 * prefix - total;
  v.margin = 2 * prefix + (e - 2) - total; // d >= -(e-2); the upper bound is free
  v.ok = v.margin >= 0;
  v.x.assign(n, 0);
  for (std::size_t j = 0; j < h; ++j) v.x[v.order[j]] = 1;
  return v;
}

PartitionOutcome solve_sign_partition(std::int64_t e, const PrimeBasis& basis,
                                      const std::vector<std::int64_t>& b) {
  if (b.size() != basis.k)
    throw std::invalid_argument("need one residue per basis row");
  for (std::size_t i = 0; i < basis.k; ++i) {
    if (b[i] < 0) throw std::invalid_argument("partition residues must be non-negative");
    if (!is_admissible(e, basis.primes[i], b[i]))
      throw std::invalid_argument("partition residue is not admissible");
  }
  std::vector<mpz_class> w(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) w[i] = basis.weights_unit[i] * b[i];

  PartitionOutcome out;
  const PartitionVariant desc = partition_descending(e, w);
  const PartitionVariant asc = partition_ascending(e, w);
  out.descending_ok = desc.ok;
  out.ascending_ok = asc.ok;
  out.descending_margin = desc.margin;
  out.ascending_margin = asc.margin;
  const PartitionVariant* pick = desc.ok ? &desc : (asc.ok ? &asc : nullptr);
  if (pick == nullptr) return out;
  out.variant = desc.ok ? "descending" : "ascending";
  out.h = pick->h;
  out.signs.resize(basis.k);
  std::vector<std::int64_t> residues(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) {
    out.signs[i] = (b[i] == 0) ? 1 : (pick->x[i] != 0 ? 1 : -1);
    residues[i] = out.signs[i] * b[i];
  }
  Certificate cert = certificate_from_residues(basis, residues, "partition");
  out.certificate = std::move(cert);
  return out;
}

std::pair<mpz_class, mpz_class> knapsack_bounds(std::int64_t e,
                                                const std::vector<mpz_class>& w) {
  mpz_class total = 0;
  for (const mpz_class& wi : w) total += wi;
  return {total - (e - 2), total + (e - 2)};
}

VerifyResult verify_certificate(std::int64_t e, const Certificate& cert) {
  VerifyResult r;
  if (e <= 7) {
    r.failures.push_back("basis:unsupported-e");
    return r;
  }
  const PrimeBasis basis = build_basis(e);
  if (cert.k != basis.k || cert.primes != basis.primes)
    r.failures.push_back("basis-fingerprint");
  if (cert.residues.size() != basis.k) {
    r.failures.push_back("residue-count");
    return r;
  }
  mpz_class sum = 0;
  for (std::size_t i = 0; i < basis.k; ++i)
    sum += basis.weights_unit[i] * cert.residues[i];
  if (sum != cert.d) r.failures.push_back("sum-mismatch");
  if (!(cert.d <= e - 2 && cert.d >= -(e - 2))) r.failures.push_back("window");
  for (std::size_t i = 0; i < basis.k; ++i) {
    const std::int64_t p = basis.primes[i];
    if (((cert.d - cert.residues[i]) % p) != 0)
      r.failures.push_back("congruence:row=" + std::to_string(i));
  }
  for (std::size_t i = 0; i < basis.k; ++i) {
    if (!is_admissible(e, basis.primes[i], cert.residues[i]))
      r.failures.push_back("admissibility:row=" + std::to_string(i));
  }
  const std::int64_t q1 = e - cert.d;
  const std::int64_t q2 = e + cert.d;
  if (cert.q1 != q1 || cert.q2 != q2) r.failures.push_back("pair-mismatch");
  if (q1 < 2 || !is_prime(static_cast<std::uint64_t>(q1)))
    r.failures.push_back("primality:q1");
  if (q2 < 2 || !is_prime(static_cast<std::uint64_t>(q2)))
    r.failures.push_back("primality:q2");
  r.pass = r.failures.empty();
  return r;
}

namespace {

// v_i == d (mod p_i) with |v_i| <= cap and sum(v_i * u_i) exactly d.
// Starts from symmetric residues; the integer defect M = (sum - d) / P
// moves by P'_i per p_i-step on row i, so rows fold it away greedily
// (largest P' first) and the p=2 row, whose P' is always 1, absorbs the
// exact remainder.
std::optional<std::vector<std::int64_t>> encode_with_cap(const PrimeBasis& basis,
                                                         std::int64_t d,
                                                         std::int64_t cap) {
  const std::size_t k = basis.k;
  std::vector<std::int64_t> v(k);
  for (std::size_t i = 0; i < k; ++i) {
    v[i] = symmetric_residue(d, basis.primes[i]);
    if (v[i] > cap || -v[i] > cap) return std::nullopt;
  }
  mpz_class sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += basis.weights_unit[i] * v[i];
  mpz_class deficit = (sum - d) / basis.P;

  std::vector<std::size_t> rows(k > 1 ? k - 1 : 0);
  std::iota(rows.begin(), rows.end(), std::size_t{1});
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    return basis.inverses[a] > basis.inverses[b];
  });
  for (std::size_t idx : rows) {
    if (deficit == 0) break;
    const std::int64_t p = basis.primes[idx];
    const std::int64_t pp = basis.inverses[idx];
    mpz_class want = -deficit / pp; // truncated: the defect never flips sign
    const std::int64_t lo = ceil_div(-cap - v[idx], p);
    const std::int64_t hi = floor_div(cap - v[idx], p);
    if (want < lo) want = lo;
    if (want > hi) want = hi;
    const std::int64_t t = static_cast<std::int64_t>(want.get_si());
    v[idx] += t * p;
    deficit += mpz_class(t) * pp;
  }
  if (deficit != 0) {
    // p = 2 row: P' = 1, so it can absorb any remainder it has room for
    if (!deficit.fits_slong_p()) return std::nullopt;
    const std::int64_t t = -deficit.get_si();
    const std::int64_t moved = v[0] + 2 * t;
    if (moved > cap || -moved > cap) return std::nullopt;
    v[0] = moved;
  }
  return v;
}

} // namespace

std::vector<std::int64_t> residues_from_d(const PrimeBasis& basis, std::int64_t d) {
  auto v = encode_with_cap(basis, d, basis.e - 2);
  if (!v) throw std::overflow_error("target has no encoding within the residue window");
  return *v;
}

SignedSelection selection_from_residues(const PrimeBasis& basis,
                                        const std::vector<std::int64_t>& residues) {
  if (residues.size() != basis.k)
    throw std::invalid_argument("need one residue per basis row");
  SignedSelection sel;
  sel.choice.resize(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) {
    sel.choice[i].index = row_position_of(basis.e, basis.primes[i], residues[i]);
    sel.choice[i].sign = residues[i] < 0 ? -1 : 1;
  }
  return sel;
}

std::vector<std::int64_t> residues_of_selection(const PrimeBasis& basis,
                                                const SignedSelection& sel) {
  if (sel.choice.size() != basis.k)
    throw std::invalid_argument("need one choice per basis row");
  std::vector<std::int64_t> out(basis.k);
  for (std::size_t i = 0; i < basis.k; ++i) {
    const std::int64_t b = row_b_at(basis.e, basis.primes[i], sel.choice[i].index);
    const int want = b < 0 ? -1 : 1;
    if (sel.choice[i].sign != want)
      throw std::invalid_argument("stored sign disagrees with the indexed candidate");
    out[i] = b;
  }
  return out;
}

Certificate certificate_from_residues(const PrimeBasis& basis,
                                      const std::vector<std::int64_t>& residues,
                                      const std::string& strategy) {
  if (residues.size() != basis.k)
    throw std::invalid_argument("need one residue per basis row");
  Certificate c;
  c.e = basis.e;
  c.k = basis.k;
  c.primes = basis.primes;
  c.residues = residues;
  mpz_class sum = 0;
  for (std::size_t i = 0; i < basis.k; ++i) sum += basis.weights_unit[i] * residues[i];
  if (!sum.fits_slong_p())
    throw std::overflow_error("weighted sum does not fit a 64-bit d");
  c.d = static_cast<std::int64_t>(sum.get_si());
  c.q1 = basis.e - c.d;
  c.q2 = basis.e + c.d;
  for (std::size_t i = 0; i < basis.k; ++i) {
    const std::int64_t m = residues[i] < 0 ? -residues[i] : residues[i];
    if (m > basis.e - 2) c.oversized_rows.push_back(i);
  }
  c.strategy = strategy;
  return c;
}

Certificate certificate_from_d(std::int64_t e, std::int64_t d, const std::string& strategy) {
  const PrimeBasis basis = build_basis(e);
  return certificate_from_residues(basis, residues_from_d(basis, d), strategy);
}

ProbeRecord probe_statement4(std::int64_t e, std::uint64_t max_nodes) {
  if (e <= 7) throw std::invalid_argument("probe requires e > 7");
  ProbeRecord rec;
  rec.e = e;
  const PrimeBasis basis = build_basis(e);
  rec.k = basis.k;
  const std::int64_t window = e - 2;
  std::int64_t best = -1;
  bool out_of_budget = false;
  for (std::int64_t m = 0; m <= window && !out_of_budget; ++m) {
    if (best == 0 || (best == 1 && m > 0)) break; // nothing smaller can exist
    for (int half = 0; half < (m == 0 ? 1 : 2); ++half) {
      const std::int64_t t = half == 0 ? m : -m;
      if (rec.nodes >= max_nodes) {
        out_of_budget = true;
        break;
      }
      ++rec.nodes;
      bool ok = true;
      for (std::size_t i = 0; i < basis.k && ok; ++i)
        ok = is_admissible(e, basis.primes[i], t);
      if (!ok) continue;
      // per-row floor: no selection for t can beat its symmetric residues
      std::int64_t lower = 0;
      for (std::size_t i = 0; i < basis.k; ++i) {
        const std::int64_t s = symmetric_residue(t, basis.primes[i]);
        lower = std::max(lower, s < 0 ? -s : s);
      }
      if (best >= 0 && lower >= best) continue;
      for (std::int64_t cap = lower; cap <= window; ++cap) {
        if (rec.nodes >= max_nodes) {
          out_of_budget = true;
          break;
        }
        ++rec.nodes;
        const auto v = encode_with_cap(basis, t, cap);
        if (!v) continue;
        std::int64_t achieved = 0;
        for (const std::int64_t vi : *v)
          achieved = std::max(achieved, vi < 0 ? -vi : vi);
        if (best < 0 || achieved < best) best = achieved;
        break;
      }
    }
  }
  if (best >= 0) {
    rec.solved = true;
    // an all-zero selection witnesses exponent 0, i.e. magnitude e^0 = 1,
    // so the reported magnitude is floored at 1 to keep the pair consistent
    rec.min_max_abs_b = best >= 1 ? best : 1;
    rec.r_min = rec.min_max_abs_b <= 1
                    ? 0.0
                    : static_cast<double>(basis.k) *
                          std::log(static_cast<double>(rec.min_max_abs_b)) /
                          std::log(static_cast<double>(e));
  }
  return rec;
}

} // namespace gbs
