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

// Exact null distribution of the two-sample statistic D_{m,n} by lattice
// path counting.
//
// A pooled ordering of the m + n observations is a monotone path from (0,0)
// to (m,n); after i first-sample and j second-sample observations,
// F_m - G_n = (i*n_red - j*m_red) / L. All orderings are equally likely, so
// every probability is a path count divided by binom(m+n, m).
//
//  * inside:  Pr(D >= k/L) = 1 - #{paths with |dev| <= k-1 everywhere} / total
//  * outside: Pr(sup(F_m - G_n) >= k/L) summed over the first edge that
//             reaches dev >= k. Every term is positive, so there is no
//             cancellation and tiny probabilities keep full precision.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ks2/combinatorics.hpp"
#include "ks2/equal_sample.hpp"
#include "ks2/lattice_types.hpp"

namespace ks2 {

inline constexpr double kSmallPvalueThreshold = 1e-14;

/// All attainable k/L, ascending. O(mn) marking of |i*n_red - j*m_red|.
inline std::vector<StatisticValue> achievable_values(const SamplePair& pair) {
  std::vector<char> seen(static_cast<std::size_t>(pair.L) + 1, 0);
  for (std::int64_t i = 0; i <= pair.m; ++i) {
    for (std::int64_t j = 0; j <= pair.n; ++j) {
      const std::int64_t dev = pair.deviation(i, j);
      seen[static_cast<std::size_t>(dev < 0 ? -dev : dev)] = 1;
    }
  }
  std::vector<StatisticValue> out;
  const double root = std::sqrt(pair.effective_size_value());
  for (std::int64_t k = 1; k <= pair.L; ++k) {
    if (!seen[static_cast<std::size_t>(k)]) continue;
    StatisticValue s;
    s.pair = pair;
    s.k = k;
    s.d = pair.level(k);
    s.M = root * s.d.value();
    s.achievable = true;
    out.push_back(s);
  }
  return out;
}

/// Just the k values of achievable_values().
inline std::vector<std::int64_t> achievable_levels(const SamplePair& pair) {
  std::vector<char> seen(static_cast<std::size_t>(pair.L) + 1, 0);
  for (std::int64_t i = 0; i <= pair.m; ++i) {
    for (std::int64_t j = 0; j <= pair.n; ++j) {
      const std::int64_t dev = pair.deviation(i, j);
      seen[static_cast<std::size_t>(dev < 0 ? -dev : dev)] = 1;
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= pair.L; ++k) {
    if (seen[static_cast<std::size_t>(k)]) out.push_back(k);
  }
  return out;
}

namespace detail {

inline void check_level(const SamplePair& pair, std::int64_t k) {
  if (k < 1 || k > pair.L) {
    throw std::domain_error("level index k must lie in [1, L]");
  }
}

// Band |dev(i,j)| <= k-1 in row i, clipped to [0, n].
inline std::int64_t band_lo(const SamplePair& p, std::int64_t i,
                            std::int64_t k) {
  return std::max<std::int64_t>(0, ceil_div(i * p.n_red - (k - 1), p.m_red));
}
inline std::int64_t band_hi(const SamplePair& p, std::int64_t i,
                            std::int64_t k) {
  return std::min<std::int64_t>(p.n, floor_div(i * p.n_red + (k - 1), p.m_red));
}

// Shared row sweep for the inside recursion. `Cell` is double (normalized
// path fractions) or BigInt (path counts); `step` combines the cell below
// (i-1, j) with the cell to the left (i, j-1).
template <typename Cell, typename Step>
Cell inside_sweep(const SamplePair& p, std::int64_t k, Cell one, Step step) {
  std::vector<Cell> row(static_cast<std::size_t>(p.n) + 1, Cell(0));
  std::int64_t prev_lo = 0;
  std::int64_t prev_hi = band_hi(p, 0, k);
  for (std::int64_t j = 0; j <= prev_hi; ++j) row[static_cast<std::size_t>(j)] = one;
  for (std::int64_t i = 1; i <= p.m; ++i) {
    const std::int64_t lo = band_lo(p, i, k);
    const std::int64_t hi = band_hi(p, i, k);
    if (lo > hi) return Cell(0);
    for (std::int64_t j = prev_lo; j < lo && j <= prev_hi; ++j) {
      row[static_cast<std::size_t>(j)] = Cell(0);
    }
    for (std::int64_t j = lo; j <= hi; ++j) {
      auto& cell = row[static_cast<std::size_t>(j)];
      if (j > lo) {
        step(cell, row[static_cast<std::size_t>(j - 1)], i, j);
      } else {
        step(cell, Cell(0), i, j);
      }
    }
    prev_lo = lo;
    prev_hi = hi;
  }
  return prev_hi == p.n ? row[static_cast<std::size_t>(p.n)] : Cell(0);
}

}  // namespace detail

/// Number of orderings whose path stays within |dev| <= k-1, i.e. D < k/L.
inline BigInt inside_count(const SamplePair& pair, std::int64_t k) {
  detail::check_level(pair, k);
  return detail::inside_sweep<BigInt>(
      pair, k, BigInt(1),
      [](BigInt& cell, const BigInt& left, std::int64_t, std::int64_t) {
        cell += left;
      });
}

/// 1 - Pr(D < k/L) in double precision with the normalized recursion
/// u(i,j) = u(i-1,j) i/(i+j) + u(i,j-1) j/(i+j). The subtraction from 1 is
/// left as is: below ~1e-15 the result is dominated by rounding and may even
/// be negative.
inline double inside_pvalue_raw(const SamplePair& pair, std::int64_t k) {
  detail::check_level(pair, k);
  std::vector<double> inv(static_cast<std::size_t>(pair.m + pair.n) + 1, 0.0);
  for (std::size_t s = 1; s < inv.size(); ++s) inv[s] = 1.0 / static_cast<double>(s);
  const double inside = detail::inside_sweep<double>(
      pair, k, 1.0,
      [&inv](double& cell, double left, std::int64_t i, std::int64_t j) {
        const double w = inv[static_cast<std::size_t>(i + j)];
        cell = cell * (static_cast<double>(i) * w) +
               left * (static_cast<double>(j) * w);
      });
  return 1.0 - inside;
}

inline Rational inside_probability_exact(const SamplePair& pair,
                                         std::int64_t k) {
  const BigInt total = binomial(static_cast<std::uint64_t>(pair.m + pair.n),
                                static_cast<std::uint64_t>(pair.m));
  return Rational(total - inside_count(pair, k), total);
}

inline bool use_exact(const SamplePair& pair, Precision precision) {
  switch (precision) {
    case Precision::exact: return true;
    case Precision::floating: return false;
    case Precision::automatic: return pair.m <= 1000 && pair.n <= 1000;
  }
  return true;
}

inline PValue inside_pvalue(const SamplePair& pair, const Fraction& d,
                            Precision precision = Precision::automatic) {
  const std::int64_t k = level_index(pair, d);
  if (use_exact(pair, precision)) {
    return PValue::from_exact(inside_probability_exact(pair, k),
                              Method::inside);
  }
  return PValue::from_double(inside_pvalue_raw(pair, k), Method::inside);
}

namespace detail {

// Cells that can still reach dev >= k: any j with dev(m, j) >= k.
inline std::int64_t crossing_reach(const SamplePair& p, std::int64_t k) {
  return std::min<std::int64_t>(p.n, floor_div(p.m * p.n_red - k, p.m_red));
}

// Region dev <= k-1 in row i, clipped below at 0.
inline std::int64_t below_lo(const SamplePair& p, std::int64_t i,
                             std::int64_t k) {
  return std::max<std::int64_t>(0, ceil_div(i * p.n_red - (k - 1), p.m_red));
}

}  // namespace detail

/// Number of orderings whose path reaches dev >= k, i.e. sup(F_m - G_n) >= k/L.
/// First-passage decomposition: paths below the line up to (i-1, j), then the
/// crossing step to (i, j), then any continuation.
inline BigInt one_sided_count(const SamplePair& p, std::int64_t k) {
  detail::check_level(p, k);
  const std::int64_t reach = detail::crossing_reach(p, k);
  if (reach < 0) return BigInt(0);
  std::vector<BigInt> below(static_cast<std::size_t>(reach) + 1, BigInt(1));
  BigInt total = 0;
  std::int64_t prev_lo = 0;
  for (std::int64_t i = 1; i <= p.m; ++i) {
    const std::int64_t lo = detail::below_lo(p, i, k);
    const std::int64_t last_cross = std::min(lo - 1, reach);
    for (std::int64_t j = prev_lo; j <= last_cross; ++j) {
      auto& cell = below[static_cast<std::size_t>(j)];
      total += cell * binomial(static_cast<std::uint64_t>(p.m - i + p.n - j),
                               static_cast<std::uint64_t>(p.m - i));
      cell = 0;
    }
    if (lo > reach) break;
    for (std::int64_t j = lo + 1; j <= reach; ++j) {
      below[static_cast<std::size_t>(j)] += below[static_cast<std::size_t>(j - 1)];
    }
    prev_lo = lo;
  }
  return total;
}

inline Rational one_sided_exact(const SamplePair& pair, std::int64_t k) {
  return Rational(one_sided_count(pair, k),
                  binomial(static_cast<std::uint64_t>(pair.m + pair.n),
                           static_cast<std::uint64_t>(pair.m)));
}

/// ln pv_os in floating point. The path fractions below the line stay in
/// [0,1]; each first-passage edge weight is formed in log space and the
/// positive terms are combined with log-sum-exp.
inline double one_sided_log(const SamplePair& p, std::int64_t k) {
  detail::check_level(p, k);
  const std::int64_t reach = detail::crossing_reach(p, k);
  if (reach < 0) return -std::numeric_limits<double>::infinity();
  const double mm = static_cast<double>(p.m);
  const double nn = static_cast<double>(p.n);
  const double log_total = log_binomial(mm + nn, mm);
  std::vector<double> below(static_cast<std::size_t>(reach) + 1, 1.0);
  LogSumExp acc;
  std::int64_t prev_lo = 0;
  for (std::int64_t i = 1; i <= p.m; ++i) {
    const std::int64_t lo = detail::below_lo(p, i, k);
    const std::int64_t last_cross = std::min(lo - 1, reach);
    for (std::int64_t j = prev_lo; j <= last_cross; ++j) {
      auto& cell = below[static_cast<std::size_t>(j)];
      if (cell > 0.0) {
        const double di = static_cast<double>(i);
        const double dj = static_cast<double>(j);
        const double log_edge = log_binomial(di - 1.0 + dj, dj) +
                                log_binomial(mm - di + nn - dj, mm - di) -
                                log_total;
        acc.add(std::log(cell) + log_edge);
      }
      cell = 0.0;
    }
    if (lo > reach) break;
    const double di = static_cast<double>(i);
    for (std::int64_t j = lo; j <= reach; ++j) {
      const double w = 1.0 / (di + static_cast<double>(j));
      auto& cell = below[static_cast<std::size_t>(j)];
      const double left = j > lo ? below[static_cast<std::size_t>(j - 1)] : 0.0;
      cell = cell * (di * w) + left * (static_cast<double>(j) * w);
    }
    prev_lo = lo;
  }
  return acc.log_value();
}

/// pv_os(m,n,d) = Pr(sup(F_m - G_n) >= d). Exact by default.
inline PValue outside_one_sided(const SamplePair& pair, const Fraction& d,
                                Precision precision = Precision::automatic) {
  const std::int64_t k = level_index(pair, d);
  if (use_exact(pair, precision)) {
    return PValue::from_exact(one_sided_exact(pair, k), Method::outside);
  }
  return PValue::from_log(one_sided_log(pair, k), Method::outside);
}

/// 2 * pv_os: the two-sided p-value when d > 1/2, an upper bound otherwise.
inline PValue doubled_one_sided(const SamplePair& pair, std::int64_t k,
                                bool exact) {
  const Method method = 2 * k > pair.L ? Method::outside : Method::upper_bound;
  if (exact) {
    return PValue::from_exact(2 * one_sided_exact(pair, k), method);
  }
  return PValue::from_log(std::log(2.0) + one_sided_log(pair, k), method);
}

enum class Policy { automatic, force_inside, force_outside, force_gk };

/// Two-sided p-value Pr(D >= d) with method selection:
///   d > 1/2            -> 2 pv_os (exact equality there)
///   m == n             -> Gnedenko-Korolyuk
///   otherwise          -> inside; a floating inside result below
///                         small_threshold is replaced by the bound 2 pv_os
inline PValue two_sided_pvalue(const SamplePair& pair, const Fraction& d,
                               Policy policy = Policy::automatic,
                               Precision precision = Precision::automatic,
                               double small_threshold = kSmallPvalueThreshold) {
  const std::int64_t k = level_index(pair, d);
  const bool exact = use_exact(pair, precision);
  switch (policy) {
    case Policy::force_gk:
      if (pair.m != pair.n) {
        throw std::domain_error("Gnedenko-Korolyuk needs m == n");
      }
      return gk_pvalue({pair.n, k});
    case Policy::force_outside:
      return doubled_one_sided(pair, k, exact);
    case Policy::force_inside:
      return exact ? PValue::from_exact(inside_probability_exact(pair, k),
                                        Method::inside)
                   : PValue::from_double(inside_pvalue_raw(pair, k),
                                         Method::inside);
    case Policy::automatic:
      break;
  }
  if (2 * k > pair.L) return doubled_one_sided(pair, k, exact);
  if (pair.m == pair.n) return gk_pvalue({pair.n, k});
  if (exact) {
    return PValue::from_exact(inside_probability_exact(pair, k),
                              Method::inside);
  }
  const double raw = inside_pvalue_raw(pair, k);
  if (raw < small_threshold) return doubled_one_sided(pair, k, false);
  return PValue::from_double(raw, Method::inside);
}

inline constexpr std::int64_t kOracleMaxTotal = 22;

/// Number of orderings with D == k/L for each k in 0..L, by enumerating all
/// binom(m+n, m) orderings.
inline std::vector<std::uint64_t> oracle_distribution(const SamplePair& pair) {
  if (pair.m + pair.n > kOracleMaxTotal) {
    throw std::length_error("oracle enumeration limited to m + n <= 22");
  }
  const int total = static_cast<int>(pair.m + pair.n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(pair.L) + 1, 0);
  // Bit t set: the t-th pooled observation comes from the first sample.
  std::uint32_t mask = (pair.m == 32) ? ~0u : ((1u << pair.m) - 1u);
  const std::uint32_t limit = 1u << total;
  while (mask < limit) {
    std::int64_t dev = 0;
    std::int64_t worst = 0;
    for (int t = 0; t < total; ++t) {
      dev += ((mask >> t) & 1u) ? pair.n_red : -pair.m_red;
      worst = std::max(worst, dev < 0 ? -dev : dev);
    }
    ++counts[static_cast<std::size_t>(worst)];
    // Next mask with the same popcount (Gosper).
    const std::uint32_t low = mask & (~mask + 1u);
    const std::uint32_t ripple = mask + low;
    if (ripple == 0) break;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  return counts;
}

inline PValue oracle_pvalue(const SamplePair& pair, const Fraction& d) {
  const std::int64_t k = level_index(pair, d);
  const auto counts = oracle_distribution(pair);
  std::uint64_t hits = 0;
  std::uint64_t all = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    all += counts[v];
    if (static_cast<std::int64_t>(v) >= k) hits += counts[v];
  }
  return PValue::from_exact(Rational(BigInt(hits), BigInt(all)),
                            Method::oracle);
}

}  // namespace ks2
