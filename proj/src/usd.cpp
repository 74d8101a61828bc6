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

#include "lossjm/usd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace lossjm {

namespace {

namespace mp = boost::multiprecision;

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("usd: n must be >= 2");
}

/// 4 sin^2(pi k / n) = |omega^k - 1|^2 without cancellation.
double chord2(int k, int n) {
  const double s = std::sin(std::numbers::pi * k / n);
  return 4 * s * s;
}

/// prod_{k=1}^{n-1} (1 - exp(-x |omega^k - 1|^2)).
double split_product(int n, double x) {
  double p = 1;
  for (int k = 1; k < n; ++k) p *= -std::expm1(-x * chord2(k, n));
  return p;
}

template <typename F>
double p_d_sum(int n, double r_in) {
  using std::cos;
  using std::exp;
  using std::sin;
  const F r(r_in);
  const F r2 = r * r;
  const F two_pi = 2 * boost::math::constants::pi<F>();
  F best = std::numeric_limits<double>::infinity();
  double worst_imag = 0;
  for (int t = 1; t <= n; ++t) {
    F re = 0;
    F im = 0;
    for (int j = 0; j < n; ++j) {
      const F theta = two_pi * j / n;
      const F half = sin(theta / 2);
      // exp(r^2 (omega^j - 1)) = exp(-2 r^2 sin^2(theta/2)) e^{i r^2 sin(theta)}
      const F mag = exp(-2 * r2 * half * half);
      const F arg = r2 * sin(theta) + theta * t;
      re += mag * cos(arg);
      im += mag * sin(arg);
    }
    worst_imag = std::max(worst_imag, std::abs(static_cast<double>(im)));
    if (re < best) best = re;
  }
  if (worst_imag > 1e-9) throw std::logic_error("p_d: imaginary parts failed to cancel");
  return static_cast<double>(best);
}

}  // namespace

double p_d(int n, double r) {
  check_n(n);
  if (!(r >= 0)) throw std::invalid_argument("p_d: r must be >= 0");
  if (r == 0) return 0;
  // Decimal digits lost to cancellation: the result is near n^2 r^{2(n-1)}/n!.
  const double lost = -std::log10(std::max(p_d_approx(n, r), std::numeric_limits<double>::min()));
  double v = 0;
  if (lost < 1)
    v = p_d_sum<double>(n, r);
  else if (lost < 30)
    v = p_d_sum<mp::cpp_bin_float_50>(n, r);
  else
    v = p_d_sum<mp::number<mp::cpp_bin_float<400>>>(n, r);
  return std::clamp(v, 0.0, 1.0);
}

double p_d_approx(int n, double r) {
  check_n(n);
  return n * n * std::exp(2.0 * (n - 1) * std::log(r) - std::lgamma(n + 1.0));
}

double p_lon(int n, double r) {
  check_n(n);
  return split_product(n, r * r / n);
}

double p_lon_approx(int n, double r) {
  check_n(n);
  return n * n * std::exp(2.0 * (n - 1) * std::log(r) - (n - 1) * std::log(static_cast<double>(n)));
}

double chord_product(int n) {
  check_n(n);
  double p = 1;
  for (int k = 1; k < n; ++k) p *= chord2(k, n);
  return p;
}

double lossy_usd_success(int n, double r, double tau_b) {
  check_n(n);
  if (!(tau_b >= 0 && tau_b <= 1)) throw std::invalid_argument("lossy_usd_success: tau_b must lie in [0, 1]");
  return split_product(n, tau_b * r * r);
}

double lossy_usd_success_approx(int n, double r, double tau_b) {
  check_n(n);
  return n * n * std::exp(2.0 * (n - 1) * std::log(r) + (n - 1) * std::log(tau_b));
}

int result4_threshold(double tau) {
  if (!(tau > 0 && tau <= 1)) throw std::invalid_argument("result4_threshold: tau must lie in (0, 1]");
  // tau = mant / 2^shift exactly.
  int exp2 = 0;
  const double frac = std::frexp(tau, &exp2);
  const auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  const int shift = 53 - exp2;
  // n! tau^{n-1} > 1  <=>  n! mant^{n-1} > 2^{shift (n-1)}
  mp::cpp_int lhs = 2 * mp::cpp_int(mant);
  mp::cpp_int rhs = mp::cpp_int(1) << shift;
  for (int n = 2; n <= kMaxThreshold; ++n) {
    if (lhs > rhs) return n;
    lhs *= (n + 1);
    lhs *= mant;
    rhs <<= shift;
  }
  throw std::domain_error("result4_threshold: no n up to the search limit");
}

UsdReport usd_report(int n, double r, double tau) {
  UsdReport u;
  u.n = n;
  u.r = r;
  u.tau = tau;
  u.p_d = p_d(n, r);
  u.p_lon = p_lon(n, r);
  u.p_d_approx = p_d_approx(n, r);
  u.p_lon_approx = p_lon_approx(n, r);
  u.lossy_success = lossy_usd_success(n, r, tau);
  u.lossy_success_approx = lossy_usd_success_approx(n, r, tau);
  u.threshold = result4_threshold(tau);
  u.contradiction = n >= u.threshold && u.lossy_success_approx > u.p_d_approx;
  return u;
}

}  // namespace lossjm
