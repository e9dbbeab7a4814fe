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

// Slow, obviously-correct reference computations used only by the tests.
// None of these share code paths with the library beyond the number types.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ks2/combinatorics.hpp"

namespace ks2::oracle {

/// Pascal's triangle rows 0..n_max.
inline std::vector<std::vector<BigInt>> pascal(int n_max) {
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    rows[n].assign(static_cast<std::size_t>(n) + 1, BigInt(1));
    for (int k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
  }
  return rows;
}

/// Every ordering of m x's and n y's, D computed from the empirical
/// distribution functions directly: D = max |i/m - j/n| over prefixes.
/// Returns counts[c] where D = c / (m*n).
inline std::vector<std::uint64_t> enumerate_mn(int m, int n) {
  std::vector<char> seq(static_cast<std::size_t>(m + n), 'y');
  std::fill(seq.begin(), seq.begin() + m, 'x');
  std::sort(seq.begin(), seq.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(m) * n + 1, 0);
  do {
    std::int64_t i = 0, j = 0, worst = 0;
    for (char c : seq) {
      (c == 'x' ? i : j) += 1;
      // |i/m - j/n| * m n = |i n - j m|
      const std::int64_t v = i * n - j * m;
      worst = std::max(worst, v < 0 ? -v : v);
    }
    ++counts[static_cast<std::size_t>(worst)];
  } while (std::next_permutation(seq.begin(), seq.end()));
  return counts;
}

/// Pr(D >= num/den) from enumerate_mn.
inline Rational enumerate_pvalue(int m, int n, std::int64_t num, std::int64_t den) {
  const auto counts = enumerate_mn(m, n);
  BigInt hit = 0, all = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    all += counts[c];
    // c/(mn) >= num/den
    if (static_cast<std::int64_t>(c) * den >= num * m * n) hit += counts[c];
  }
  return Rational(hit, all);
}

/// Pr(sup(F_m - G_n) >= num/den) by enumeration.
inline Rational enumerate_one_sided(int m, int n, std::int64_t num, std::int64_t den) {
  std::vector<char> seq(static_cast<std::size_t>(m + n), 'y');
  std::fill(seq.begin(), seq.begin() + m, 'x');
  std::sort(seq.begin(), seq.end());
  BigInt hit = 0, all = 0;
  do {
    std::int64_t i = 0, j = 0, best = 0;
    for (char c : seq) {
      (c == 'x' ? i : j) += 1;
      best = std::max(best, i * n - j * m);
    }
    all += 1;
    if (best * den >= num * m * n) hit += 1;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return Rational(hit, all);
}

/// Full (m+1) x (n+1) path-count table for paths staying strictly inside
/// |i/m - j/n| < num/den. Returns Pr(D >= num/den).
inline Rational matrix_pvalue(int m, int n, std::int64_t num, std::int64_t den) {
  std::vector<std::vector<BigInt>> c(static_cast<std::size_t>(m) + 1,
                                     std::vector<BigInt>(static_cast<std::size_t>(n) + 1));
  auto inside = [&](std::int64_t i, std::int64_t j) {
    const __int128 v = static_cast<__int128>(i) * n - static_cast<__int128>(j) * m;
    const __int128 a = v < 0 ? -v : v;
    return a * den < static_cast<__int128>(num) * m * n;
  };
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (!inside(i, j)) continue;
      if (i == 0 && j == 0) {
        c[0][0] = 1;
        continue;
      }
      BigInt v = 0;
      if (i > 0) v += c[i - 1][j];
      if (j > 0) v += c[i][j - 1];
      c[i][j] = v;
    }
  }
  BigInt total = 1;
  for (int t = 1; t <= m; ++t) total = total * (n + t) / t;
  return Rational(total - c[m][n], total);
}

/// ln binom(n, k) from 50-digit log-gamma.
inline HighFloat log_binomial_hp(const HighFloat& n, const HighFloat& k) {
  using boost::multiprecision::lgamma;
  return lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1);
}

/// 2 sum (-1)^(j-1) exp(-2 j^2 M^2) at 50 digits, 200 terms.
inline HighFloat beta_hp(double M) {
  HighFloat s = 0;
  const HighFloat a = 2 * HighFloat(M) * HighFloat(M);
  for (int j = 1; j <= 200; ++j) {
    const HighFloat t = boost::multiprecision::exp(-a * j * j);
    s += (j % 2 ? t : HighFloat(-t));
  }
  return 2 * s;
}

/// Deterministic random sample-size pairs for property tests.
inline std::vector<std::pair<int, int>> random_pairs(int count, int max_size,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, max_size);
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < count; ++i) out.emplace_back(dist(rng), dist(rng));
  return out;
}

}  // namespace ks2::oracle
