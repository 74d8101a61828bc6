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

#include "lossjm/qubit_criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lossjm {

namespace {

double f_value(const QubitMeasurementParams& q) {
  const double m2 = q.m.squaredNorm();
  const double plus = std::max(0.0, (1 + q.gamma) * (1 + q.gamma) - m2);
  const double minus = std::max(0.0, (1 - q.gamma) * (1 - q.gamma) - m2);
  return 0.5 * (std::sqrt(plus) + std::sqrt(minus));
}

}  // namespace

PairTestReport pair_test(const QubitMeasurementParams& a, const QubitMeasurementParams& b) {
  PairTestReport r;
  r.gamma1 = a.gamma;
  r.gamma2 = b.gamma;
  r.m1 = a.m;
  r.m2 = b.m;
  r.f1 = f_value(a);
  r.f2 = f_value(b);
  if (r.f1 <= kDegenerateF || r.f2 <= kDegenerateF) {
    r.degenerate = true;
    r.test_value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double g1 = r.gamma1 / r.f1;
  const double g2 = r.gamma2 / r.f2;
  const double cross = a.m.dot(b.m) - a.gamma * b.gamma;
  r.test_value = (1 - r.f1 * r.f1 - r.f2 * r.f2) * (1 - g1 * g1 - g2 * g2) - cross * cross;
  r.incompatible = r.test_value > 0;
  return r;
}

PairTestReport pair_test(const Povm& a, const Povm& b) {
  return pair_test(bloch_params(a), bloch_params(b));
}

MeasurementSet displaced_pair(double r, double tau) {
  return symmetric_family(DisplacedFamilyParams{2, r, tau, 2});
}

LeadingOrderCheck leading_order_check(double r, double tau) {
  const MeasurementSet pair = displaced_pair(r, tau);
  LeadingOrderCheck c;
  c.test_value = pair_test(pair[0], pair[1]).test_value;
  c.predicted = 16 * tau * (2 * tau - 1) * r * r;
  c.relative_deviation =
      c.predicted == 0 ? std::numeric_limits<double>::quiet_NaN() : c.test_value / c.predicted - 1;
  return c;
}

}  // namespace lossjm
