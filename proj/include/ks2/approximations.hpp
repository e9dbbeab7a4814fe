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

// Asymptotic approximations to Pr(D_{m,n} >= d) and their error against
// the exact value.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ks2/lattice_types.hpp"

namespace ks2 {

/// 2 exp(-2 M^2).
inline double dkwm_bound(double M) { return 2.0 * std::exp(-2.0 * M * M); }

/// Kolmogorov tail 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 M^2). Terms are
/// added until they drop below tol; for M below ~0.1 the series is slow and
/// the value is taken as 1.
inline double beta_series(double M, double tol = 1e-18) {
  if (!(M >= 0.0)) throw std::domain_error("beta_series: need M >= 0");
  if (M < 0.1) return 1.0;
  double sum = 0.0;
  const double a = 2.0 * M * M;
  for (int j = 1; j < 100000; ++j) {
    const double term = std::exp(-a * static_cast<double>(j) * j);
    sum += (j % 2 == 1) ? term : -term;
    if (term < tol) break;
  }
  return std::min(1.0, 2.0 * sum);
}

/// sqrt(N_e) + 0.12 + 0.11 / sqrt(N_e).
inline double stephens_factor(double effective_size) {
  if (!(effective_size > 0.0)) {
    throw std::domain_error("stephens_factor: need N_e > 0");
  }
  const double r = std::sqrt(effective_size);
  return r + 0.12 + 0.11 / r;
}

inline double stephens_pli(double effective_size, double d) {
  return beta_series(stephens_factor(effective_size) * d);
}

/// M_alpha with 2 exp(-2 M^2) = alpha.
inline double critical_M(double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::domain_error("critical_M: need 0 < alpha <= 2");
  }
  return std::sqrt(std::log(2.0 / alpha) / 2.0);
}

/// Approximations to Pr(D_{m,n} >= d) at one point.
struct ApproxBundle {
  double M = 0.0;
  double dkwm = 0.0;   // 2 exp(-2 M^2)
  double beta = 0.0;   // Kolmogorov limit at M
  double spli = 0.0;   // Kolmogorov limit at the Stephens-corrected M
};

inline ApproxBundle approximations(const SamplePair& pair, const Fraction& d) {
  const double ne = pair.effective_size_value();
  ApproxBundle b;
  b.M = std::sqrt(ne) * d.value();
  b.dkwm = dkwm_bound(b.M);
  b.beta = beta_series(b.M);
  b.spli = stephens_pli(ne, d.value());
  return b;
}

/// dkwm/pv - 1 (signed: negative means the bound fails) and
/// |spli/pv - 1|. A zero p-value gives +inf for both.
struct RelativeErrors {
  double dkwm = 0.0;
  double spli = 0.0;
};

inline RelativeErrors relative_errors(const ApproxBundle& b, double pv) {
  if (!(pv > 0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return {b.dkwm / pv - 1.0, std::fabs(b.spli / pv - 1.0)};
}

/// |a/b - 1| between two p-values from different methods.
inline double relative_difference(double a, double b) {
  if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
  return std::fabs(a / b - 1.0);
}

}  // namespace ks2
