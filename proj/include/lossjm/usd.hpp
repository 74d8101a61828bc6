// Copyright 2026 The lossjm Authors
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

// Unambiguous discrimination of the n symmetric coherent states
// |r omega^k>, omega = e^{2 pi i / n}.

#ifndef LOSSJM_USD_HPP
#define LOSSJM_USD_HPP

namespace lossjm {

/// Optimal success probability
///   min_{t=1..n} sum_{j=0}^{n-1} omega^{jt} exp(r^2 (omega^j - 1)),
/// clamped to [0, 1]. The sum is O(1) per term while the result can be as
/// small as r^{2(n-1)}, so it is evaluated with enough decimal digits to
/// resolve the cancellation. Throws std::logic_error if an imaginary part
/// above 1e-9 survives, std::invalid_argument for n < 2 or r < 0.
double p_d(int n, double r);

/// n^2 r^{2(n-1)} / n!
double p_d_approx(int n, double r);

/// Split-and-detect strategy: prod_{k=1}^{n-1} (1 - exp(-(r^2/n)|omega^k - 1|^2)).
double p_lon(int n, double r);

/// n^2 r^{2(n-1)} / n^{n-1}
double p_lon_approx(int n, double r);

/// prod_{k=1}^{n-1} |omega^k - 1|^2, which equals n^2.
double chord_product(int n);

/// prod_{k=1}^{n-1} (1 - exp(-tau_b r^2 |omega^k - 1|^2)).
double lossy_usd_success(int n, double r, double tau_b);

/// n^2 r^{2(n-1)} tau_b^{n-1}
double lossy_usd_success_approx(int n, double r, double tau_b);

inline constexpr int kMaxThreshold = 10000;

/// Smallest n >= 2 with n! > tau^{1-n}, compared exactly on the binary value of
/// tau. Throws std::invalid_argument for tau outside (0, 1] and
/// std::domain_error if no n <= kMaxThreshold qualifies.
int result4_threshold(double tau);

struct UsdReport {
  int n = 2;
  double r = 0;
  double tau = 1;
  double p_d = 0;
  double p_lon = 0;
  double p_d_approx = 0;
  double p_lon_approx = 0;
  double lossy_success = 0;
  double lossy_success_approx = 0;
  int threshold = 2;
  /// n >= threshold(tau): the lossy small-r success exceeds the optimal bound.
  bool contradiction = false;
};

UsdReport usd_report(int n, double r, double tau);

}  // namespace lossjm

#endif  // LOSSJM_USD_HPP
