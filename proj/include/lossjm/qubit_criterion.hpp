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

// Closed-form joint-measurability test for two two-outcome qubit measurements
// A^i_pm = (1/2)[(1 pm gamma_i) I pm m_i.sigma]:
//
//   F_i  = (1/2)[sqrt((1 + gamma_i)^2 - |m_i|^2) + sqrt((1 - gamma_i)^2 - |m_i|^2)]
//   Test = (1 - F_1^2 - F_2^2)(1 - (gamma_1/F_1)^2 - (gamma_2/F_2)^2)
//          - (m_1.m_2 - gamma_1 gamma_2)^2
//
// The pair is compatible iff Test <= 0.

#ifndef LOSSJM_QUBIT_CRITERION_HPP
#define LOSSJM_QUBIT_CRITERION_HPP

#include <Eigen/Dense>

#include "lossjm/measurements.hpp"

namespace lossjm {

struct PairTestReport {
  double gamma1 = 0;
  double gamma2 = 0;
  Eigen::Vector3d m1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d m2 = Eigen::Vector3d::Zero();
  double f1 = 0;
  double f2 = 0;
  /// NaN when degenerate.
  double test_value = 0;
  bool incompatible = false;
  /// Some F_i vanishes: the criterion does not apply and no verdict is given.
  bool degenerate = false;
};

inline constexpr double kDegenerateF = 1e-12;

PairTestReport pair_test(const QubitMeasurementParams& a, const QubitMeasurementParams& b);
/// Throws std::invalid_argument unless both are two-outcome qubit POVMs.
PairTestReport pair_test(const Povm& a, const Povm& b);

/// The mu = +-r displaced on-off pair after dual loss tau, on the lowest two
/// Fock levels.
MeasurementSet displaced_pair(double r, double tau);

struct LeadingOrderCheck {
  double test_value = 0;
  double predicted = 0;  ///< 16 tau (2 tau - 1) r^2
  /// test_value / predicted - 1; NaN when predicted is 0.
  double relative_deviation = 0;
};

LeadingOrderCheck leading_order_check(double r, double tau);

}  // namespace lossjm

#endif  // LOSSJM_QUBIT_CRITERION_HPP
