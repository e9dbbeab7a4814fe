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

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "ks2/combinatorics.hpp"

namespace ks2 {

/// Small exact fraction with a positive denominator, always reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Fraction: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return g > 1 ? Fraction{num / g, den / g} : Fraction{num, den};
  }

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a,
                                          const Fraction& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  /// Accepts "a/b", "a", or a plain decimal such as "0.29276" (read exactly).
  static Fraction parse(std::string_view text) {
    auto fail = [&]() -> Fraction {
      throw std::invalid_argument("not a rational number: '" +
                                  std::string(text) + "'");
    };
    auto parse_int = [&](std::string_view s) -> std::int64_t {
      std::int64_t v = 0;
      if (s.empty()) fail();
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) fail();
      return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return make(parse_int(text.substr(0, slash)),
                  parse_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      if (frac.size() > 17 || frac.empty()) fail();
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const bool negative = !whole.empty() && whole.front() == '-';
      const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
      const std::int64_t f = parse_int(frac);
      if (f < 0) fail();
      const std::int64_t magnitude = (negative ? -w : w) * scale + f;
      return make(negative ? -magnitude : magnitude, scale);
    }
    return make(parse_int(text), 1);
  }
};

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

/// Sizes of the two samples plus the lattice quantities derived from them.
/// F_m - G_n at the lattice point (i, j) equals (i*n_red - j*m_red) / L, so
/// every band test reduces to integer comparisons against k.
///
/// Either orientation (m <= n or m > n) is accepted; canonical() gives the
/// m <= n form.
struct SamplePair {
  std::int64_t m = 1;
  std::int64_t n = 1;
  std::int64_t g = 1;      // gcd(m, n)
  std::int64_t L = 1;      // lcm(m, n)
  std::int64_t m_red = 1;  // m / g
  std::int64_t n_red = 1;  // n / g

  static SamplePair make(std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1) {
      throw std::domain_error("SamplePair: sample sizes must be positive, got " +
                              std::to_string(m) + ", " + std::to_string(n));
    }
    SamplePair p;
    p.m = m;
    p.n = n;
    p.g = std::gcd(m, n);
    p.m_red = m / p.g;
    p.n_red = n / p.g;
    p.L = p.m_red * n;
    return p;
  }

  SamplePair canonical() const { return m <= n ? *this : make(n, m); }
  SamplePair swapped() const { return make(n, m); }

  /// mn/(m+n) exactly.
  Rational effective_size() const {
    return Rational(BigInt(m) * n, BigInt(m + n));
  }
  double effective_size_value() const {
    return static_cast<double>(m) * static_cast<double>(n) /
           static_cast<double>(m + n);
  }

  Fraction level(std::int64_t k) const { return Fraction::make(k, L); }

  /// Deviation i*n_red - j*m_red; D on a path is max |deviation| / L.
  std::int64_t deviation(std::int64_t i, std::int64_t j) const {
    return i * n_red - j * m_red;
  }

  friend bool operator==(const SamplePair& a, const SamplePair& b) {
    return a.m == b.m && a.n == b.n;
  }
};

/// Smallest k with k/L >= d, i.e. the band index that Pr(D >= d) reduces to.
inline std::int64_t level_index(const SamplePair& pair, const Fraction& d) {
  if (d.num <= 0 || d > Fraction{1, 1}) {
    throw std::domain_error("statistic value must satisfy 0 < d <= 1, got " +
                            d.to_string());
  }
  const __int128 scaled = static_cast<__int128>(d.num) * pair.L;
  __int128 k = scaled / d.den;
  if (k * d.den != scaled) ++k;
  return static_cast<std::int64_t>(k);
}

/// The k with d == k/L, if d lies on the 1/L grid.
inline std::optional<std::int64_t> exact_level(const SamplePair& pair,
                                               const Fraction& d) {
  const __int128 scaled = static_cast<__int128>(d.num) * pair.L;
  if (scaled % d.den != 0) return std::nullopt;
  return static_cast<std::int64_t>(scaled / d.den);
}

inline bool is_achievable(const SamplePair& pair, std::int64_t k) {
  if (k < 1 || k > pair.L) return false;
  for (std::int64_t i = 0; i <= pair.m; ++i) {
    const std::int64_t base = i * pair.n_red;
    for (const std::int64_t target : {base - k, base + k}) {
      if (target < 0 || target % pair.m_red != 0) continue;
      if (target / pair.m_red <= pair.n) return true;
    }
  }
  return false;
}

/// An attainable value d = k/L of D_{m,n} and its normalized form M.
struct StatisticValue {
  SamplePair pair;
  std::int64_t k = 1;
  Fraction d;
  double M = 0.0;
  bool achievable = false;
};

inline StatisticValue make_statistic(const SamplePair& pair, std::int64_t k) {
  if (k < 1 || k > pair.L) {
    throw std::domain_error("statistic index k must lie in [1, L]");
  }
  StatisticValue s;
  s.pair = pair;
  s.k = k;
  s.d = pair.level(k);
  s.M = std::sqrt(pair.effective_size_value()) * s.d.value();
  s.achievable = is_achievable(pair, k);
  return s;
}

enum class Method { inside, outside, gk, oracle, upper_bound };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::inside: return "inside";
    case Method::outside: return "outside";
    case Method::gk: return "gk";
    case Method::oracle: return "oracle";
    case Method::upper_bound: return "upper_bound";
  }
  return "?";
}

/// A null probability Pr(D >= d). When method is upper_bound the number is
/// 2 * pv_os, a bound on the p-value rather than the p-value.
struct PValue {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  Method method = Method::inside;
  std::optional<Rational> exact;

  static PValue from_exact(const Rational& q, Method method) {
    PValue p;
    p.exact = q;
    p.method = method;
    if (q > 0) {
      const HighFloat hv(q);
      p.value = static_cast<double>(hv);
      p.log_value = static_cast<double>(boost::multiprecision::log(hv));
    }
    return p;
  }

  /// Clamps into [0, 1]; the raw floating result may stray outside.
  static PValue from_double(double v, Method method) {
    PValue p;
    p.method = method;
    p.value = std::clamp(v, 0.0, 1.0);
    p.log_value = p.value > 0.0 ? std::log(p.value)
                                : -std::numeric_limits<double>::infinity();
    return p;
  }

  static PValue from_log(double log_value, Method method) {
    PValue p;
    p.method = method;
    p.log_value = std::min(log_value, 0.0);
    p.value = std::exp(p.log_value);
    return p;
  }

  bool is_true_pvalue() const { return method != Method::upper_bound; }
};

enum class Precision { automatic, exact, floating };

}  // namespace ks2
