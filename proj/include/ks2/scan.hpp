// Copyright 2026 The ks2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Searches over attainable values of D_{m,n} for the largest ratio
//   r(d) = Pr(D_{m,n} >= d) / (2 exp(-2 M^2)),   M = sqrt(mn/(m+n)) d,
// and the derived tables (delta_n / Delta_N for m = n, n = 2m rows, best n
// per m, relative-error studies).
//
// For m != n the p-value at d <= 1/2 comes from the floating inside
// recursion. Once that drops below 1e-14 (at d_0) it carries too few
// correct digits; from there up to d = 1/2 only the bound 2 pv_os is used,
// and its ratio r_ub is tracked separately as rbd_max. For d > 1/2 the
// value 2 pv_os is exact.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ks2/approximations.hpp"
#include "ks2/combinatorics.hpp"
#include "ks2/equal_sample.hpp"
#include "ks2/lattice.hpp"
#include "ks2/lattice_types.hpp"
#include "ks2/parallel.hpp"

namespace ks2 {

struct RatioRecord {
  SamplePair pair;
  std::int64_t k_max = 0;
  Fraction d_max;
  PValue pv_at_max;
  double r_max = 0.0;
  // Other k whose ratio equals r_max exactly; k_max is the smallest.
  std::vector<std::int64_t> ties;
};

/// The d-band [d_0, 1/2] where only the upper bound 2 pv_os is trusted.
struct ScreenedBand {
  std::optional<Fraction> d0;
  std::int64_t k0 = 0;
  double rbd_max = 0.0;  // max r_ub over the band
  std::int64_t rbd_k = 0;
  std::size_t size = 0;  // attainable d in the band
};

struct PairScan {
  RatioRecord best;
  ScreenedBand band;
};

struct ScanOptions {
  // Evaluate every attainable d instead of pruning with monotonicity.
  bool exhaustive = false;
  double small_threshold = kSmallPvalueThreshold;
  // Print detected argmax ties to this stream, if set.
  std::ostream* tie_log = nullptr;
};

namespace detail {

struct RatioMax {
  bool found = false;
  std::size_t index = 0;
  double ratio = -1.0;
  double value = 0.0;
  std::vector<std::size_t> ties;
};

// max value(i)/weight(i) over i in [0, count), for value and weight both
// nonincreasing in i and weight > 0. Any interval [a, b] has ratios at most
// value(a)/weight(b); intervals whose bound falls below the running best are
// skipped. The smallest index wins on exact ties.
template <typename Value, typename Weight>
RatioMax monotone_ratio_max(std::size_t count, Value&& value, Weight&& weight,
                            bool exhaustive) {
  constexpr double kSlack = 1e-6;  // absorbs rounding in value()
  RatioMax best;
  if (count == 0) return best;
  std::vector<double> cache(count, std::numeric_limits<double>::quiet_NaN());
  auto consider = [&](std::size_t i) {
    const double r = cache[i] / weight(i);
    if (!best.found || r > best.ratio) {
      best.found = true;
      best.ratio = r;
      best.index = i;
      best.value = cache[i];
      best.ties.clear();
    } else if (r == best.ratio) {
      if (i < best.index) {
        best.ties.push_back(best.index);
        best.index = i;
        best.value = cache[i];
      } else {
        best.ties.push_back(i);
      }
    }
  };
  auto eval = [&](std::size_t i) {
    if (std::isnan(cache[i])) {
      cache[i] = value(i);
      consider(i);
    }
    return cache[i];
  };
  if (exhaustive) {
    for (std::size_t i = 0; i < count; ++i) eval(i);
    std::sort(best.ties.begin(), best.ties.end());
    return best;
  }
  const std::size_t step = std::max<std::size_t>(1, count / 64);
  std::vector<std::size_t> grid;
  for (std::size_t i = 0; i < count; i += step) grid.push_back(i);
  if (grid.back() != count - 1) grid.push_back(count - 1);
  for (std::size_t i : grid) eval(i);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
    stack.emplace_back(grid[g], grid[g + 1]);
  }
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    if (b - a <= 1) continue;
    const double bound = cache[a] / weight(b);
    if (bound * (1.0 + kSlack) < best.ratio) continue;
    const std::size_t mid = a + (b - a) / 2;
    eval(mid);
    stack.emplace_back(a, mid);
    stack.emplace_back(mid, b);
  }
  std::sort(best.ties.begin(), best.ties.end());
  return best;
}

inline double dkwm_at(const SamplePair& pair, std::int64_t k) {
  const double M = std::sqrt(pair.effective_size_value()) *
                   static_cast<double>(k) / static_cast<double>(pair.L);
  return dkwm_bound(M);
}

inline RatioRecord scan_equal(const SamplePair& pair, std::ostream* tie_log) {
  const GkRow row(pair.n);
  RatioRecord rec;
  rec.pair = pair;
  HighFloat best = -1;
  for (std::int64_t k = 1; k <= pair.n; ++k) {
    const HighFloat r = gk_ratio(row, k);
    if (r > best) {
      best = r;
      rec.k_max = k;
      rec.ties.clear();
    } else if (r == best) {
      rec.ties.push_back(k);
    }
  }
  rec.r_max = static_cast<double>(best);
  rec.d_max = pair.level(rec.k_max);
  rec.pv_at_max = PValue::from_exact(row.pvalue(rec.k_max), Method::gk);
  if (tie_log && !rec.ties.empty()) {
    *tie_log << "tie in r_max for (" << pair.m << "," << pair.n
             << ") at k=" << rec.k_max << "\n";
  }
  return rec;
}

}  // namespace detail

/// r_max over attainable d together with the screened band.
inline PairScan scan_pair(const SamplePair& pair, const ScanOptions& opts = {}) {
  PairScan out;
  if (pair.m == pair.n) {
    out.best = detail::scan_equal(pair, opts.tie_log);
    return out;
  }
  const std::vector<std::int64_t> ks = achievable_levels(pair);
  std::vector<std::int64_t> low;   // 2k <= L
  std::vector<std::int64_t> high;  // 2k > L
  for (std::int64_t k : ks) (2 * k > pair.L ? high : low).push_back(k);

  // Inside values for the low part, computed lazily.
  std::vector<double> inside(low.size(), std::numeric_limits<double>::quiet_NaN());
  auto inside_at = [&](std::size_t i) {
    if (std::isnan(inside[i])) inside[i] = inside_pvalue_raw(pair, low[i]);
    return inside[i];
  };
  auto small = [&](std::size_t i) { return inside_at(i) < opts.small_threshold; };

  // First index of the screened band; low.size() when there is none.
  std::size_t band_start = low.size();
  if (opts.exhaustive) {
    for (std::size_t i = 0; i < low.size(); ++i) {
      if (small(i)) {
        band_start = i;
        break;
      }
    }
  } else if (!low.empty() && small(low.size() - 1)) {
    std::size_t lo = 0;
    std::size_t hi = low.size() - 1;  // small(hi) holds
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (small(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    band_start = lo;
  }

  // True p-values: low[0 .. band_start) then all of high.
  std::vector<std::int64_t> trusted(low.begin(), low.begin() + static_cast<std::ptrdiff_t>(band_start));
  trusted.insert(trusted.end(), high.begin(), high.end());
  const double log2 = std::log(2.0);
  auto trusted_value = [&](std::size_t i) {
    if (i < band_start) return inside_at(i);
    return std::exp(log2 + one_sided_log(pair, trusted[i]));
  };
  auto trusted_weight = [&](std::size_t i) {
    return detail::dkwm_at(pair, trusted[i]);
  };
  const detail::RatioMax best = detail::monotone_ratio_max(
      trusted.size(), trusted_value, trusted_weight, opts.exhaustive);

  RatioRecord& rec = out.best;
  rec.pair = pair;
  if (best.found) {
    rec.k_max = trusted[best.index];
    rec.d_max = pair.level(rec.k_max);
    rec.r_max = best.ratio;
    rec.pv_at_max = best.index < band_start
                        ? PValue::from_double(best.value, Method::inside)
                        : PValue::from_double(best.value, Method::outside);
    for (std::size_t t : best.ties) rec.ties.push_back(trusted[t]);
    if (opts.tie_log && !rec.ties.empty()) {
      *opts.tie_log << "tie in r_max for (" << pair.m << "," << pair.n
                    << ") at k=" << rec.k_max << "\n";
    }
  }

  if (band_start < low.size()) {
    ScreenedBand& band = out.band;
    band.k0 = low[band_start];
    band.d0 = pair.level(band.k0);
    band.size = low.size() - band_start;
    auto ub_value = [&](std::size_t i) {
      return std::exp(log2 + one_sided_log(pair, low[band_start + i]));
    };
    auto ub_weight = [&](std::size_t i) {
      return detail::dkwm_at(pair, low[band_start + i]);
    };
    const detail::RatioMax ub = detail::monotone_ratio_max(
        band.size, ub_value, ub_weight, opts.exhaustive);
    band.rbd_max = ub.ratio;
    band.rbd_k = low[band_start + ub.index];
  }
  return out;
}

inline RatioRecord r_max_scan(const SamplePair& pair,
                              const ScanOptions& opts = {}) {
  return scan_pair(pair, opts).best;
}

/// Largest r_max(m, n) over n_min <= n <= n_max, plus mrmr: the largest
/// rbd_max / r_max(m, n) over the same n.
struct BestN {
  std::int64_t m = 0;
  std::int64_t n_best = 0;
  RatioRecord best;
  double mrmr = 0.0;
  std::int64_t n_mrmr = 0;
  std::optional<Fraction> d0_at_n_max;
};

inline BestN best_n_scan(std::int64_t m, std::int64_t n_max,
                         std::int64_t n_min = 0,
                         const ScanOptions& opts = {}) {
  if (n_min <= 0) n_min = m + 1;
  if (m < 1 || n_max < n_min) {
    throw std::domain_error("best_n_scan: need 1 <= m and n_min <= n_max");
  }
  std::vector<std::int64_t> ns;
  for (std::int64_t n = n_min; n <= n_max; ++n) ns.push_back(n);
  const std::vector<PairScan> scans = parallel_map(
      ns, [&](std::int64_t n) { return scan_pair(SamplePair::make(m, n), opts); });
  BestN out;
  out.m = m;
  for (std::size_t i = 0; i < scans.size(); ++i) {
    const PairScan& s = scans[i];
    if (out.n_best == 0 || s.best.r_max > out.best.r_max) {
      out.n_best = ns[i];
      out.best = s.best;
    }
    if (s.band.d0) {
      const double ratio = s.band.rbd_max / s.best.r_max;
      if (ratio > out.mrmr) {
        out.mrmr = ratio;
        out.n_mrmr = ns[i];
      }
    }
  }
  out.d0_at_n_max = scans.back().band.d0;
  return out;
}

/// n = 2m rows.
inline std::vector<PairScan> double_table(std::int64_t m_lo, std::int64_t m_hi,
                                          const ScanOptions& opts = {}) {
  if (m_lo < 1 || m_hi < m_lo) {
    throw std::domain_error("double_table: need 1 <= m_lo <= m_hi");
  }
  std::vector<std::int64_t> ms;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) ms.push_back(m);
  return parallel_map(ms, [&](std::int64_t m) {
    return scan_pair(SamplePair::make(m, 2 * m), opts);
  });
}

inline constexpr std::int64_t kLastFailingN = 457;

/// Rounded to 5 decimals, then 1e-5 added, so the printed value stays an
/// upper bound.
inline double guarded_upper(double x) {
  return std::round(x * 1e5) / 1e5 + 1e-5;
}

struct DeltaReport {
  std::vector<DeltaRecord> rows;
  // (N, Delta_N) with Delta_N = max{delta_n : N <= n <= n_hi}.
  std::vector<std::pair<std::int64_t, double>> suffix_maxima;
};

inline DeltaReport delta_table(std::int64_t n_lo, std::int64_t n_hi) {
  if (n_lo < 1 || n_hi < n_lo) {
    throw std::domain_error("delta_table: need 1 <= n_lo <= n_hi");
  }
  std::vector<std::int64_t> ns;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) ns.push_back(n);
  DeltaReport rep;
  rep.rows = parallel_map(ns, [](std::int64_t n) { return dkwm_margin(n); });
  rep.suffix_maxima.resize(rep.rows.size());
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = rep.rows.size(); i-- > 0;) {
    running = std::max(running, rep.rows[i].delta_n);
    rep.suffix_maxima[i] = {rep.rows[i].n, running};
  }
  return rep;
}

/// One row of the n = 2m, d = (m+1)/n comparison between the floating
/// inside value and the exact outside value (here d > 1/2, so 2 pv_os is
/// the p-value).
struct PvoRow {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  double pvi = 0.0;
  double pvo = 0.0;
  Rational pvo_exact;
  double reler = 0.0;
};

inline PvoRow pvo_row(std::int64_t m) {
  const SamplePair pair = SamplePair::make(m, 2 * m);
  PvoRow row;
  row.m = m;
  row.n = 2 * m;
  row.k = m + 1;
  row.pvi = inside_pvalue_raw(pair, row.k);
  row.pvo_exact = 2 * one_sided_exact(pair, row.k);
  row.pvo = to_double(row.pvo_exact);
  row.reler = relative_difference(row.pvi, row.pvo);
  return row;
}

/// Smallest attainable d for (n-1, n) with p-value <= alpha, and the
/// relative error of the DKWM bound there.
struct AsymptRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  Fraction d;
  double pv = 0.0;
  double dkwm = 0.0;
  double reler = 0.0;
  double scaled = 0.0;  // sqrt(n) * reler
};

inline double pvalue_float(const SamplePair& pair, std::int64_t k) {
  return two_sided_pvalue(pair, pair.level(k), Policy::automatic,
                          Precision::floating)
      .value;
}

inline AsymptRow asympt_row(std::int64_t n, double alpha = 0.05) {
  if (n < 2) throw std::domain_error("asympt_row: need n >= 2");
  const SamplePair pair = SamplePair::make(n - 1, n);
  const std::vector<std::int64_t> ks = achievable_levels(pair);
  std::size_t lo = 0;
  std::size_t hi = ks.size() - 1;  // d = 1 always has pv <= alpha here
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (pvalue_float(pair, ks[mid]) <= alpha) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  AsymptRow row;
  row.n = n;
  row.k = ks[lo];
  row.d = pair.level(row.k);
  row.pv = pvalue_float(pair, row.k);
  row.dkwm = detail::dkwm_at(pair, row.k);
  row.reler = row.dkwm / row.pv - 1.0;
  row.scaled = std::sqrt(static_cast<double>(n)) * row.reler;
  return row;
}

/// p-value, approximations and their relative errors at one (m, n, k).
struct ApproxRow {
  SamplePair pair;
  std::int64_t k = 0;
  Fraction d;
  PValue pv;
  ApproxBundle approx;
  RelativeErrors reler;
};

inline ApproxRow approx_row(const SamplePair& pair, std::int64_t k,
                            Precision precision = Precision::automatic) {
  ApproxRow row;
  row.pair = pair;
  row.k = k;
  row.d = pair.level(k);
  row.pv = two_sided_pvalue(pair, row.d, Policy::automatic, precision);
  row.approx = approximations(pair, row.d);
  row.reler = relative_errors(row.approx, row.pv.value);
  return row;
}

}  // namespace ks2
