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

// Equal sample sizes m = n: closed-form null distribution of D_{n,n}, the
// auxiliary functions PH/DPH used to bound it, and the per-n excess delta_n
// of the worst ratio over the bound 2 exp(-2 M^2).

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ks2/combinatorics.hpp"
#include "ks2/lattice_types.hpp"

namespace ks2 {

/// Query Pr(KS_{n,n} >= M) with M = k / sqrt(2n), i.e. Pr(D_{n,n} >= k/n).
struct GkQuery {
  std::int64_t n = 1;
  std::int64_t k = 1;

  double M() const {
    return static_cast<double>(k) / std::sqrt(2.0 * static_cast<double>(n));
  }
};

/// Binomial row binom(2n, n + t), t = 0..n, shared by every k for one n.
class GkRow {
 public:
  explicit GkRow(std::int64_t n) : n_(n) {
    if (n < 1) throw std::domain_error("GkRow: n must be positive");
    const auto two_n = static_cast<std::uint64_t>(2 * n);
    upper_.resize(static_cast<std::size_t>(n) + 1);
    upper_[0] = binomial(two_n, static_cast<std::uint64_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
      // binom(2n, n+t+1) = binom(2n, n+t) * (n-t) / (n+t+1), exact.
      upper_[t + 1] = upper_[t] * (n - t);
      upper_[t + 1] /= (n + t + 1);
    }
  }

  std::int64_t n() const { return n_; }

  /// binom(2n, n + t), zero outside 0..n.
  const BigInt& upper(std::int64_t t) const {
    static const BigInt zero(0);
    return (t < 0 || t > n_) ? zero : upper_[static_cast<std::size_t>(t)];
  }
  const BigInt& central() const { return upper_[0]; }

  /// Signed terms (-1)^(i-1) binom(2n, n + i k), i = 1..floor(n/k).
  std::vector<BigInt> alternating_terms(std::int64_t k) const {
    check_k(k);
    std::vector<BigInt> terms;
    for (std::int64_t i = 1; i * k <= n_; ++i) {
      terms.push_back(i % 2 == 1 ? upper(i * k) : BigInt(-upper(i * k)));
    }
    return terms;
  }

  /// Sum of alternating_terms(k); Pr(D >= k/n) = 2 * tail_sum / binom(2n, n).
  BigInt tail_sum(std::int64_t k) const {
    check_k(k);
    BigInt s = 0;
    for (std::int64_t i = 1; i * k <= n_; ++i) {
      if (i % 2 == 1) {
        s += upper(i * k);
      } else {
        s -= upper(i * k);
      }
    }
    return s;
  }

  Rational pvalue(std::int64_t k) const {
    return Rational(2 * tail_sum(k), central());
  }

 private:
  void check_k(std::int64_t k) const {
    if (k < 1 || k > n_) {
      throw std::domain_error("Gnedenko-Korolyuk: need 1 <= k <= n");
    }
  }

  std::int64_t n_;
  std::vector<BigInt> upper_;
};

inline PValue gk_pvalue(const GkQuery& q) {
  if (q.n < 1 || q.k < 1 || q.k > q.n) {
    throw std::domain_error("gk_pvalue: need 1 <= k <= n");
  }
  const GkRow row(q.n);
  std::vector<BigInt> terms = row.alternating_terms(q.k);
  const Rational sum = alternating_sum_exact(terms);
  return PValue::from_exact(2 * sum / Rational(row.central()), Method::gk);
}

/// ln binom(2n, n+k) - ln binom(2n, n) + k^2/n, defined for real 0 <= k <= n.
/// PH <= 0 exactly when 2 binom(2n,n+k)/binom(2n,n) <= 2 exp(-k^2/n).
inline double ph(double n, double k) {
  if (!(n > 0.0) || !(k >= 0.0) || k > n) {
    throw std::domain_error("ph: need 0 <= k <= n and n > 0");
  }
  return log_binomial(2.0 * n, n + k) - log_binomial(2.0 * n, n) + k * k / n;
}

/// PH(n,k) - PH(n,k-1) in closed form.
inline double dph(double n, double k) {
  if (!(n > 0.0) || !(k >= 1.0) || k > n) {
    throw std::domain_error("dph: need 1 <= k <= n");
  }
  return std::log((n - k + 1.0) / (n + k)) + (2.0 * k - 1.0) / n;
}

/// ln(binom(2n, n+2k) / binom(2n, n+k)) + 3k^2/n + 0.05. Positive values
/// mean the second reflection term is at least exp(-3t^2 - 0.05) times the
/// first, with t = k / sqrt(n).
inline double reflection_ratio_margin(double n, double k) {
  if (!(n > 0.0) || !(k >= 0.0) || 2.0 * k > n) {
    throw std::domain_error("reflection_ratio_margin: need 0 <= 2k <= n");
  }
  return log_binomial(2.0 * n, n + 2.0 * k) - log_binomial(2.0 * n, n + k) +
         3.0 * k * k / n + 0.05;
}

/// Worst ratio Pr(KS_{n,n} >= M) / (2 exp(-2M^2)) over M = k/sqrt(2n).
struct DeltaRecord {
  std::int64_t n = 1;
  std::int64_t k_max = 1;
  double delta_n = 0.0;  // ratio - 1 at k_max
  HighFloat delta_precise = 0;
  bool holds_dkwm = false;
};

/// ratio(k) = pvalue(k) / (2 exp(-k^2/n)) at 50 digits.
inline HighFloat gk_ratio(const GkRow& row, std::int64_t k) {
  const HighFloat tail(row.tail_sum(k));
  const HighFloat central(row.central());
  const HighFloat exponent =
      HighFloat(k) * HighFloat(k) / HighFloat(row.n());
  return tail / central * boost::multiprecision::exp(exponent);
}

inline DeltaRecord dkwm_margin(std::int64_t n) {
  if (n < 1) throw std::domain_error("dkwm_margin: n must be positive");
  const GkRow row(n);
  DeltaRecord rec;
  rec.n = n;
  HighFloat best = -1;
  for (std::int64_t k = 1; k <= n; ++k) {
    const HighFloat r = gk_ratio(row, k);
    if (r > best) {
      best = r;
      rec.k_max = k;
    }
  }
  rec.delta_precise = best - 1;
  rec.delta_n = static_cast<double>(rec.delta_precise);
  rec.holds_dkwm = rec.delta_precise <= 0;
  return rec;
}

/// Exact single and double reflection bounds on Pr(D_{n,n} >= k/n):
///   first  = 2 binom(2n, n+k) / binom(2n, n)
///   second = (2 binom(2n, n+k) - binom(2n, n+2k)) / binom(2n, n)
/// binom(2n, n+2k) is taken as 0 when 2k > n.
inline std::pair<Rational, Rational> reflection_bounds(std::int64_t n,
                                                  std::int64_t k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::domain_error("reflection_bounds: need 1 <= k <= n");
  }
  const GkRow row(n);
  const Rational central(row.central());
  const Rational first = Rational(2 * row.upper(k)) / central;
  const Rational second =
      Rational(2 * row.upper(k) - row.upper(2 * k)) / central;
  return {first, second};
}

}  // namespace ks2
