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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace ks2 {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// 50 decimal digits; used wherever a ratio of exact integers has to be
// compared against exp(...) with margins near 1e-7.
using HighFloat = boost::multiprecision::mpfr_float_50;

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigInt(0);
  BigInt result;
  mpz_bin_uiui(result.backend().data(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return result;
}

/// Exact binomial coefficient together with its arguments.
struct BigBinomial {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  BigInt value;
};

inline BigBinomial exact_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("exact_binomial: need 0 <= k <= n, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  }
  const auto un = static_cast<std::uint64_t>(n);
  const auto uk = static_cast<std::uint64_t>(k);
  return {un, uk, binomial(un, uk)};
}

/// Natural log of a probability. -inf encodes an exact zero.
struct LogProb {
  double log_value = -std::numeric_limits<double>::infinity();

  static LogProb zero() { return {}; }
  static LogProb one() { return {0.0}; }
  static LogProb from_value(double p) {
    return {p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity()};
  }
  double value() const { return std::exp(log_value); }
  bool is_zero() const { return std::isinf(log_value) && log_value < 0; }
};

/// Running sum of positive terms given by their logarithms. Keeps the
/// largest exponent factored out so terms down to 1e-300 and below add
/// without underflow.
class LogSumExp {
 public:
  void add(double log_term) {
    if (std::isinf(log_term) && log_term < 0) return;
    if (scale_ == -std::numeric_limits<double>::infinity()) {
      scale_ = log_term;
      sum_ = 1.0;
      return;
    }
    if (log_term <= scale_) {
      sum_ += std::exp(log_term - scale_);
    } else {
      sum_ = sum_ * std::exp(scale_ - log_term) + 1.0;
      scale_ = log_term;
    }
  }

  double log_value() const {
    if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
    return scale_ + std::log(sum_);
  }

 private:
  double scale_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

namespace detail {

// ln Gamma(x+1) - (x ln x - x + 0.5 ln(2 pi x)), the Stirling remainder.
inline double stirling_remainder(double x) {
  if (x >= 15.0) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number series, truncated after the x^-9 term.
    return inv *
           (1.0 / 12.0 -
            inv2 * (1.0 / 360.0 -
                    inv2 * (1.0 / 1260.0 -
                            inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
  }
  return std::lgamma(x + 1.0) -
         (x * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi * x));
}

}  // namespace detail

/// ln binom(n, k) through the Gamma function, so non-integer arguments are
/// allowed. The entropy part is evaluated with log1p and the Stirling
/// remainders separately, which keeps the relative error at a few ulps
/// even when ln Gamma(n+1) itself is far larger than the result.
inline double log_binomial(double n, double k) {
  if (!(n >= 0.0) || !(k >= 0.0) || k > n) {
    throw std::domain_error("log_binomial: need 0 <= k <= n");
  }
  const double small = std::min(k, n - k);
  if (small == 0.0) return 0.0;
  const double large = n - small;
  const double p = small / n;
  const double entropy = -small * std::log(p) - large * std::log1p(-p);
  const double prefactor =
      0.5 * std::log(n / (2.0 * std::numbers::pi * small * large));
  return entropy + prefactor + detail::stirling_remainder(n) -
         detail::stirling_remainder(small) - detail::stirling_remainder(large);
}

inline Rational alternating_sum_exact(std::span<const BigInt> terms) {
  BigInt total = 0;
  for (const auto& t : terms) total += t;
  return Rational(total);
}

/// Natural log of a positive rational, evaluated at 50 digits.
inline double log_of(const Rational& q) {
  if (q <= 0) return -std::numeric_limits<double>::infinity();
  const HighFloat hv(q);
  return static_cast<double>(boost::multiprecision::log(hv));
}

inline double to_double(const Rational& q) {
  return static_cast<double>(HighFloat(q));
}

}  // namespace ks2
