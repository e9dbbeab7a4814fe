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

// Acceptance run: one [PASS]/[FAIL] line per criterion, with the measured
// numbers next to it. Exit status is nonzero if any criterion not listed in
// kKnownRed fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "ks2/ks2.hpp"
#include "oracles.hpp"

namespace {

using namespace ks2;
using Clock = std::chrono::steady_clock;

// Criterion 1 quotes 1.87970906825e-57 for gk(500, 251). The exact value is
// 2 binom(1000, 751) / binom(1000, 500) = 1.18797090682542...e-57; the quoted
// literal has lost the leading "1". We report the mismatch rather than
// editing the reference.
const std::set<int> kKnownRed = {1};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

bool same_digits(double a, double b, int digits) {
  char sa[64], sb[64];
  std::snprintf(sa, sizeof sa, "%.*e", digits - 1, a);
  std::snprintf(sb, sizeof sb, "%.*e", digits - 1, b);
  return std::string(sa) == sb;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
  const auto t0 = Clock::now();
  const PValue pv = gk_pvalue({500, 251});
  const double secs = seconds_since(t0);
  const double quoted = 1.87970906825e-57;
  const bool digits = same_digits(pv.value, quoted, 12);
  o.require(digits, "12 significant digits of 1.87970906825e-57");
  o.require(secs < 1.0, "runtime < 1 s");
  // Independent agreement: outside method at d = 251/500 > 1/2.
  const Rational os = 2 * one_sided_exact(SamplePair::make(500, 500), 251);
  const bool agree = (os == *pv.exact);
  o.detail << "gk=" << std::setprecision(18) << pv.value << " quoted=" << quoted
           << " exact==2*pv_os:" << (agree ? "yes" : "NO")
           << " value=1.18797090682542277e-57 matches exact:"
           << (same_digits(pv.value, 1.18797090682542277e-57, 12) ? "yes" : "NO")
           << " t=" << std::setprecision(3) << secs << "s";
  if (!agree) o.require(false, "gk == 2 pv_os");
}

void c2(Outcome& o) {
  const auto t0 = Clock::now();
  const SamplePair p = SamplePair::make(300, 600);
  const PValue pv = two_sided_pvalue(p, Fraction::make(1, 1));
  const double secs = seconds_since(t0);
  const Rational expect(BigInt(2), binomial(900, 300));
  o.require(pv.exact && *pv.exact == expect, "exact equality with 2/binom(900,300)");
  o.require(same_digits(pv.value, 1.147212371856e-247, 13), "1.147212371856e-247");
  o.require(secs < 10.0, "runtime < 10 s");
  o.detail << "pv=" << std::setprecision(13) << pv.value << " method="
           << to_string(pv.method) << " t=" << std::setprecision(3) << secs << "s";
}

void c3(Outcome& o) {
  const auto t0 = Clock::now();
  long checked = 0;
  for (int m = 1; m <= 13; ++m) {
    for (int n = 1; m + n <= 14; ++n) {
      const SamplePair p = SamplePair::make(m, n);
      const auto counts = oracle::enumerate_mn(m, n);
      BigInt all = 0;
      for (auto c : counts) all += c;
      for (std::int64_t k : achievable_levels(p)) {
        const Fraction d = p.level(k);
        // Tail count over c/(mn) >= d.
        BigInt hit = 0;
        for (std::size_t c = 0; c < counts.size(); ++c) {
          if (static_cast<std::int64_t>(c) * d.den >= d.num * m * n) hit += counts[c];
        }
        const Rational truth(hit, all);
        const Rational inside = inside_probability_exact(p, k);
        if (inside != truth) o.require(false, "inside " + std::to_string(m) + "," + std::to_string(n));
        if (2 * k > p.L && 2 * one_sided_exact(p, k) != truth) {
          o.require(false, "outside " + std::to_string(m) + "," + std::to_string(n));
        }
        if (m == n && *gk_pvalue({n, k}).exact != truth) {
          o.require(false, "gk " + std::to_string(n));
        }
        ++checked;
      }
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 120.0, "runtime < 2 min");
  o.detail << "levels checked=" << checked << " t=" << std::setprecision(3) << secs << "s";
}

void c4(Outcome& o) {
  const auto t0 = Clock::now();
  const DeltaReport rep = delta_table(1, 470);
  for (const DeltaRecord& r : rep.rows) {
    if (r.holds_dkwm != (r.n >= 458)) o.require(false, "holds_dkwm at n=" + std::to_string(r.n));
  }
  const double d457 = rep.rows[456].delta_n;
  const double d458 = rep.rows[457].delta_n;
  o.require(std::fabs(d457 - 5.309e-7) <= 2e-10, "delta_457 = 5.309e-7");
  o.require(std::fabs(d458 + 7.284e-7) <= 2e-10, "delta_458 = -7.284e-7");
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, "runtime < 5 min");
  o.detail << "full sweep n=1..470 delta_457=" << std::setprecision(6) << d457
           << " delta_458=" << d458 << " t=" << std::setprecision(3) << secs << "s";
}

void c5(Outcome& o) {
  const double small[] = {0.35914, 0.23151, 0.1381, 0.08431, 0.08029, 0.06222,
                          0.04286, 0.04434, 0.04047, 0.034, 0.02628};
  const DeltaReport rep = delta_table(1, kLastFailingN);
  double worst = 0;
  for (int n = 1; n <= 11; ++n) {
    worst = std::max(worst, std::fabs(rep.rows[n - 1].delta_n - small[n - 1]));
  }
  o.require(worst <= 1e-5, "small-n deltas within 1e-5");
  struct Spot { int N; double guarded; };
  double worst_spot = 0;
  for (Spot s : {Spot{1, 0.35915}, Spot{100, 0.00177}, Spot{250, 0.00032}, Spot{455, 0.00001}}) {
    const double g = guarded_upper(rep.suffix_maxima[s.N - 1].second);
    worst_spot = std::max(worst_spot, std::fabs(g - s.guarded));
  }
  o.require(worst_spot <= 1e-5, "Delta_N spot rows within 1e-5");
  o.detail << "max |err| n<=11: " << std::setprecision(3) << worst
           << " spot rows: " << worst_spot;
}

struct RmaxRef { int m, n; double r; int k; double pv; };

void c6(Outcome& o) {
  const RmaxRef refs[] = {
      {3, 6, 0.986116, 4, 0.333333},      {10, 20, 0.944748, 6, 0.569105},
      {50, 100, 0.965171, 16, 0.350299},  {99, 198, 0.973142, 24, 0.279858},
      {95, 190, 0.972647, 23, 0.304},     {101, 202, 0.973341, 24, 0.290874},
      {150, 300, 0.977274, 30, 0.264519}, {300, 600, 0.983031, 44, 0.228761}};
  double worst = 0;
  for (const RmaxRef& ref : refs) {
    const RatioRecord r = r_max_scan(SamplePair::make(ref.m, ref.n));
    const double err = std::max(std::fabs(r.r_max - ref.r), std::fabs(r.pv_at_max.value - ref.pv));
    worst = std::max(worst, err);
    if (err > 1e-6 || r.k_max != ref.k) o.require(false, "row m=" + std::to_string(ref.m));
  }
  const auto t0 = Clock::now();
  const BestN b = best_n_scan(102, 200);
  o.require(b.n_best == 153 && std::fabs(b.best.r_max - 0.943929) <= 1e-6, "m=102 best n row");
  o.detail << "max |err|=" << std::setprecision(3) << worst << " m=102: n_best=" << b.n_best
           << " rmaxx=" << std::setprecision(6) << b.best.r_max << " ("
           << std::setprecision(3) << seconds_since(t0) << "s)";
}

void c7(Outcome& o) {
  double worst_rbd = 0;
  for (int m : {95, 101, 150, 300}) {
    const PairScan s = scan_pair(SamplePair::make(m, 2 * m));
    o.require(s.band.d0.has_value(), "band found m=" + std::to_string(m));
    worst_rbd = std::max(worst_rbd, s.band.rbd_max);
    if (!(s.band.rbd_max < 0.65 && s.band.rbd_max < s.best.r_max)) {
      o.require(false, "rbd bound m=" + std::to_string(m));
    }
  }
  // Wider band edge d = 0.275 for (300, 600): r_ub there is 0.649493.
  const SamplePair p = SamplePair::make(300, 600);
  const double rub = to_double(2 * one_sided_exact(p, 165)) / detail::dkwm_at(p, 165);
  o.require(std::fabs(rub - 0.649493) <= 1e-6, "r_ub(300,600,0.275)");

  const auto t0 = Clock::now();
  double worst_mrmr = 0;
  std::int64_t at = 0;
  for (int m = 100; m <= 199; ++m) {
    const BestN b = best_n_scan(m, 200);
    if (b.mrmr > worst_mrmr) {
      worst_mrmr = b.mrmr;
      at = m;
    }
  }
  o.require(worst_mrmr < 0.415, "mrmr < 0.415 for 100 <= m < n <= 200");
  o.detail << "max rbd_max=" << std::setprecision(6) << worst_rbd << " r_ub(300,600,165)="
           << rub << " max mrmr=" << worst_mrmr << " at m=" << at << " ("
           << std::setprecision(3) << seconds_since(t0) << "s)";
}

struct ApproxRef { int m, n, k; double pv, dkwm, rd, spli, rs; };

void c8(Outcome& o) {
  const ApproxRef refs[] = {
      {40, 40, 12, .05414, .05465, .0094, .04313, .2033},
      {40, 40, 13, .02860, .02925, .0226, .02216, .2253},
      {40, 40, 14, .014302, .01489, .0413, .01079, .2453},
      {40, 40, 15, .006761, .00721, .0669, .00498, .2628},
      {25, 50, 16, .06066, .06586, .0858, .05129, .1545},
      {25, 50, 17, .03847, .04242, .1025, .03198, .1687},
      {25, 50, 19, .014149, .01624, .1479, .01141, .1933},
      {25, 50, 20, .008195, .00966, .1783, .00653, .2029},
      {20, 500, 150, .05059, .06276, .2406, .04973, .0171},
      {20, 500, 151, .04817, .05992, .2439, .04733, .0175},
      {20, 500, 179, .010608, .01446, .3634, .01038, .0214},
      {20, 500, 180, .009998, .01368, .3688, .009787, .0211},
      {400, 600, 104, .0521403, .0543568, .04251, .051221, .01763},
      {400, 600, 105, .0486074, .0506988, .04303, .047719, .01827},
      {400, 600, 125, .0103748, .0109416, .05463, .0100418, .03210},
      {400, 600, 126, .0095362, .0100634, .05528, .0092231, .03283}};
  double worst_val = 0, worst_rel = 0;
  for (const ApproxRef& ref : refs) {
    const ApproxRow r = approx_row(SamplePair::make(ref.m, ref.n), ref.k);
    const double ev = std::max({std::fabs(r.pv.value - ref.pv), std::fabs(r.approx.dkwm - ref.dkwm),
                                std::fabs(r.approx.spli - ref.spli)});
    const double er = std::max(std::fabs(r.reler.dkwm - ref.rd), std::fabs(r.reler.spli - ref.rs));
    worst_val = std::max(worst_val, ev);
    worst_rel = std::max(worst_rel, er);
    if (ev > 1e-5 || er > 1e-3) {
      o.require(false, std::to_string(ref.m) + "," + std::to_string(ref.n) + " k=" + std::to_string(ref.k));
    }
  }
  o.detail << "rows=16 max |value err|=" << std::setprecision(3) << worst_val
           << " max |reler err|=" << worst_rel;
}

void c9(Outcome& o) {
  const PvoRow r10 = pvo_row(10);
  o.require(r10.reler <= 1e-12, "(10,20,11/20) reler <= 1e-12");
  const PvoRow r100 = pvo_row(100);
  const SamplePair p = SamplePair::make(100, 200);
  const Rational inside_exact = inside_probability_exact(p, 101);
  o.require(inside_exact == r100.pvo_exact, "exact inside == 2 pv_os");
  const double exact = to_double(inside_exact);
  // Three significant digits against the printed 6.52e-16 (the exact value
  // is 6.5149...e-16, which that literal rounds).
  const double rel = std::fabs(exact - 6.52e-16) / 6.52e-16;
  o.require(rel < 1e-3, "exact matches 6.52e-16 to 3 digits");
  // Zero correct digits: leading digit differs and relative error > 1/2.
  const bool zero_digits = !same_digits(r100.pvi, exact, 1) && r100.reler > 0.5;
  o.require(zero_digits, "float inside has no correct digits");
  o.detail << "reler(10)=" << std::setprecision(3) << r10.reler << " pvi(100)=" << r100.pvi
           << " exact=" << std::setprecision(6) << exact << " reler(100)="
           << std::setprecision(3) << r100.reler;
}

void c10(Outcome& o) {
  const auto t0 = Clock::now();
  long cases = 0;
  for (auto [m, n] : oracle::random_pairs(40, 60, 2026)) {
    const SamplePair p = SamplePair::make(m, n);
    const SamplePair q = SamplePair::make(n, m);
    Rational prev(2);
    for (std::int64_t k : achievable_levels(p)) {
      const Rational pv = inside_probability_exact(p, k);
      const Rational os = one_sided_exact(p, k);
      if (!(os <= pv && pv <= 2 * os)) o.require(false, "sandwich");
      if (!(pv <= prev)) o.require(false, "monotone in d");
      if (inside_probability_exact(q, k) != pv) o.require(false, "symmetry");
      prev = pv;
      const ApproxBundle b = approximations(p, p.level(k));
      if (b.M >= 0.3 && !(b.spli < b.beta && b.beta <= b.dkwm)) o.require(false, "ordering");
      ++cases;
    }
  }
  for (int n = 19; n <= 500; ++n) {
    const double nd = n;
    const double lo = std::sqrt(nd * std::numbers::ln2);
    if (!(dph(nd, lo) > 0 && dph(nd, std::sqrt(3 * nd)) < 0)) o.require(false, "DPH sign");
    double prev = dph(nd, std::ceil(lo));
    for (int k = static_cast<int>(std::ceil(lo)) + 1; k <= n; ++k) {
      const double cur = dph(nd, k);
      if (!(cur < prev)) o.require(false, "DPH decreasing");
      prev = cur;
    }
  }
  for (const DeltaRecord& r : delta_table(12, kLastFailingN).rows) {
    const double n = static_cast<double>(r.n);
    if (!(r.delta_n < -0.07 / n + 40 / (n * n) - 400 / (n * n * n))) o.require(false, "envelope");
  }
  o.detail << "lattice cases=" << cases << " DPH n=19..500, envelope n=12..457 t="
           << std::setprecision(3) << seconds_since(t0) << "s";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"gk(500,251) closed form", c1},
      {"2 pv_os(300,600,1) exact", c2},
      {"oracle equivalence m+n<=14", c3},
      {"DKWM threshold at 457/458", c4},
      {"delta_n / Delta_N tables", c5},
      {"r_max rows", c6},
      {"screening soundness", c7},
      {"approximation rows", c8},
      {"inside-method precision loss", c9},
      {"property suites", c10}};
  int failures = 0;
  int id = 0;
  for (const auto& [name, fn] : criteria) {
    ++id;
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const bool known = kKnownRed.count(id) > 0;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": "
              << o.detail.str() << (!o.pass && known ? " (known: reference literal typo)" : "")
              << std::endl;
    if (!o.pass && !known) ++failures;
  }
  std::cout << (failures == 0 ? "acceptance: all gating criteria pass"
                              : "acceptance: gating failures=" + std::to_string(failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
