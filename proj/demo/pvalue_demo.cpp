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

// Small tour of the library: an exact p-value, the tiny-tail case that
// needs the outside method, and the worst DKWM ratio for one pair.

#include <iostream>

#include "ks2/ks2.hpp"

int main() {
  using namespace ks2;

  const SamplePair pair = SamplePair::make(25, 50);
  const Fraction d = Fraction::make(16, 50);
  const PValue pv = two_sided_pvalue(pair, d);
  const ApproxBundle ap = approximations(pair, d);
  std::cout << "Pr(D_{25,50} >= 16/50) = " << format_number(pv.value)
            << " via " << to_string(pv.method) << "\n"
            << "  exact: " << *pv.exact << "\n"
            << "  2exp(-2M^2) = " << format_number(ap.dkwm)
            << ", Stephens-corrected limit = " << format_number(ap.spli) << "\n";

  // Far tail: only positive terms, so 1e-247 is no problem.
  const SamplePair big = SamplePair::make(300, 600);
  const PValue tail = two_sided_pvalue(big, Fraction::make(1, 1));
  std::cout << "Pr(D_{300,600} >= 1) = " << format_number(tail.value, 13)
            << " via " << to_string(tail.method) << "\n";

  const RatioRecord r = r_max_scan(SamplePair::make(3, 6));
  std::cout << "max ratio for (3,6): " << format_number(r.r_max) << " at d = "
            << r.d_max.to_string() << "\n";

  const DeltaRecord delta = dkwm_margin(458);
  std::cout << "m = n = 458: worst ratio - 1 = " << format_number(delta.delta_n, 4)
            << (delta.holds_dkwm ? " (bound holds)" : " (bound fails)") << "\n";
  return 0;
}
