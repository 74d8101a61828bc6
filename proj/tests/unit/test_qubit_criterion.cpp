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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "lossjm/measurements.hpp"
#include "lossjm/qubit_criterion.hpp"
#include "test_util.hpp"

namespace lossjm {
namespace {

QubitMeasurementParams unbiased(double vis, const Eigen::Vector3d& axis) {
  QubitMeasurementParams q;
  q.m = vis * axis.normalized();
  return q;
}

TEST(PairTest, NoisyIdenticalZIsCompatible) {
  const QubitMeasurementParams z = unbiased(0.99, {0, 0, 1});
  const PairTestReport r = pair_test(z, z);
  EXPECT_FALSE(r.degenerate);
  EXPECT_LT(r.test_value, 0);
  EXPECT_FALSE(r.incompatible);
}

TEST(PairTest, ProjectiveInputIsDegenerate) {
  const PairTestReport r = pair_test(unbiased(1.0, {0, 0, 1}), unbiased(0.99, {0, 0, 1}));
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isnan(r.test_value));
  EXPECT_FALSE(r.incompatible);
}

TEST(PairTest, NoisyZAndXThreshold) {
  const Eigen::Vector3d z(0, 0, 1), x(1, 0, 0);
  EXPECT_FALSE(pair_test(unbiased(0.70, z), unbiased(0.70, x)).incompatible);
  EXPECT_LT(pair_test(unbiased(0.70, z), unbiased(0.70, x)).test_value, 0);
  EXPECT_TRUE(pair_test(unbiased(0.72, z), unbiased(0.72, x)).incompatible);
}

TEST(PairTest, AgreesWithUnbiasedCriterion) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.3, 1.0);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const QubitMeasurementParams a = unbiased(u(rng), {g(rng), g(rng), g(rng)});
    const QubitMeasurementParams b = unbiased(u(rng), {g(rng), g(rng), g(rng)});
    const double busch = (a.m + b.m).norm() + (a.m - b.m).norm() - 2;
    if (std::abs(busch) < 1e-6) continue;
    const PairTestReport r = pair_test(a, b);
    ASSERT_FALSE(r.degenerate);
    EXPECT_EQ(r.incompatible, busch > 0) << busch << " " << r.test_value;
    ++checked;
  }
  EXPECT_GT(checked, 450);
}

TEST(PairTest, DisplacedPairAboveHalf) {
  const MeasurementSet p = displaced_pair(0.005, 0.55);
  const PairTestReport r = pair_test(p[0], p[1]);
  EXPECT_GT(r.test_value, 0);
  EXPECT_TRUE(r.incompatible);
}

TEST(PairTest, Symmetric) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 50; ++t) {
    const Povm a = random_two_outcome_povm(2, rng), b = random_two_outcome_povm(2, rng);
    const PairTestReport ab = pair_test(a, b), ba = pair_test(b, a);
    if (ab.degenerate) continue;
    EXPECT_NEAR(ab.test_value, ba.test_value, 1e-12);
  }
}

TEST(PairTest, InvariantUnderSharedUnitary) {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 50; ++t) {
    const Povm a = random_two_outcome_povm(2, rng), b = random_two_outcome_povm(2, rng);
    const CMatrix u = testing::random_unitary(2, rng);
    const PairTestReport before = pair_test(a, b);
    const PairTestReport after = pair_test(conjugate(a, u), conjugate(b, u));
    if (before.degenerate) continue;
    EXPECT_NEAR(before.test_value, after.test_value, 1e-10);
    EXPECT_NEAR(before.gamma1, after.gamma1, 1e-12);
  }
}

TEST(PairTest, RejectsNonQubit) {
  EXPECT_THROW(pair_test(displaced_onoff(0.1, 3), displaced_onoff(0.2, 3)), std::invalid_argument);
}

TEST(DisplacedPair, IsTheTwoLevelFamily) {
  const MeasurementSet p = displaced_pair(0.01, 0.6);
  const MeasurementSet f = project_set(symmetric_family({2, 0.01, 0.6, 8}), 2);
  ASSERT_EQ(p.size(), 2u);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t a = 0; a < 2; ++a) EXPECT_LE(max_abs(CMatrix(p[j][a] - f[j][a])), 1e-15);
}

TEST(LeadingOrder, SixtyPercent) {
  const LeadingOrderCheck c = leading_order_check(0.01, 0.6);
  EXPECT_NEAR(c.predicted, 1.92e-4, 1e-18);
  EXPECT_LE(std::abs(c.test_value / 1.92e-4 - 1), 0.05);
  EXPECT_NEAR(c.relative_deviation, c.test_value / c.predicted - 1, 1e-15);
}

TEST(LeadingOrder, FortyPercentIsCompatible) {
  const LeadingOrderCheck c = leading_order_check(0.01, 0.4);
  EXPECT_NEAR(c.predicted, -1.28e-4, 1e-18);
  EXPECT_LT(c.test_value, 0);
  EXPECT_LE(std::abs(c.relative_deviation), 0.05);
}

TEST(LeadingOrder, HalfIsFourthOrder) {
  std::vector<double> scaled;
  for (double r : {0.02, 0.01, 0.005}) {
    const LeadingOrderCheck c = leading_order_check(r, 0.5);
    EXPECT_EQ(c.predicted, 0);
    EXPECT_TRUE(std::isnan(c.relative_deviation));
    scaled.push_back(c.test_value / std::pow(r, 4));
  }
  const double fitted = std::max({std::abs(scaled[0]), std::abs(scaled[1]), std::abs(scaled[2])});
  for (double s : scaled) {
    EXPECT_LE(std::abs(s), fitted);
    EXPECT_NEAR(s, scaled.back(), 0.05 * std::abs(scaled.back()));
  }
}

TEST(LeadingOrder, RemainderShrinksFourfoldPerHalving) {
  for (double tau : {0.55, 0.6, 0.75}) {
    const double dev1 = std::abs(leading_order_check(0.01, tau).relative_deviation);
    const double dev2 = std::abs(leading_order_check(0.005, tau).relative_deviation);
    EXPECT_NEAR(dev1 / dev2, 4.0, 0.2) << tau;
  }
}

}  // namespace
}  // namespace lossjm
