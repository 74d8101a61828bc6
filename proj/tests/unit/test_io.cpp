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
#include <random>

#include <gtest/gtest.h>

#include "lossjm/io.hpp"
#include "table1_rows.hpp"
#include "test_util.hpp"

namespace lossjm {
namespace {

using io::json;

// Through text, so the round trip covers serialization as well.
json reparse(const json& j) { return json::parse(j.dump()); }

bool bit_equal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i).real() != b(i).real() || a(i).imag() != b(i).imag()) return false;
  return true;
}

TEST(Matrix, RoundTripIsBitExact) {
  std::mt19937_64 rng(11);
  for (int d = 1; d <= 6; ++d) {
    const CMatrix m = testing::random_matrix(d, rng) * 1e-7;
    EXPECT_TRUE(bit_equal(io::matrix_from_json(reparse(io::to_json(m))), m)) << d;
  }
}

TEST(Matrix, RowMajorInterleaved) {
  CMatrix m(2, 2);
  m << cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8);
  const json j = io::to_json(m);
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_EQ(j.at("entries"), json::array({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}));
}

TEST(Matrix, MalformedInputThrows) {
  EXPECT_THROW(io::matrix_from_json(json::parse(R"({"dim": 2, "entries": [1, 0]})")), std::invalid_argument);
  EXPECT_THROW(io::matrix_from_json(json::parse(R"({"entries": [1, 0]})")), std::invalid_argument);
  EXPECT_THROW(io::matrix_from_json(json::parse(R"({"dim": 0, "entries": []})")), std::invalid_argument);
  EXPECT_THROW(io::matrix_from_json(json::parse("[1, 0]")), std::invalid_argument);
  EXPECT_THROW(io::to_json(CMatrix(2, 3)), std::invalid_argument);
}

TEST(MeasurementSet, RoundTripIsBitExact) {
  const MeasurementSet set = symmetric_family({3, 0.005, 0.50005, 4});
  const MeasurementSet back = io::measurement_set_from_json(reparse(io::to_json(set)));
  ASSERT_EQ(back.povms.size(), set.povms.size());
  for (std::size_t j = 0; j < set.povms.size(); ++j) {
    ASSERT_EQ(back.povms[j].elements.size(), set.povms[j].elements.size());
    for (std::size_t b = 0; b < set.povms[j].elements.size(); ++b)
      EXPECT_TRUE(bit_equal(back.povms[j].elements[b], set.povms[j].elements[b]));
  }
}

TEST(MeasurementSet, RejectsInconsistentShapes) {
  json j = io::to_json(symmetric_family({2, 0.1, 0.9, 3}));
  j["dim"] = 4;
  EXPECT_THROW(io::measurement_set_from_json(j), std::invalid_argument);
  json mixed = io::to_json(symmetric_family({2, 0.1, 0.9, 3}));
  mixed["povms"][1][0] = io::to_json(CMatrix::Identity(2, 2));
  EXPECT_ANY_THROW(io::measurement_set_from_json(mixed));
  EXPECT_THROW(io::measurement_set_from_json(json::parse("{}")), std::invalid_argument);
}

TEST(FamilyParams, RoundTrip) {
  const DisplacedFamilyParams p{5, 0.045, 0.20135, 3};
  const DisplacedFamilyParams q = io::family_params_from_json(reparse(io::to_json(p)));
  EXPECT_EQ(q.count, p.count);
  EXPECT_EQ(q.r, p.r);
  EXPECT_EQ(q.tau, p.tau);
  EXPECT_EQ(q.d, p.d);
  EXPECT_ANY_THROW(io::family_params_from_json(json::parse(R"({"count": 2})")));
}

TEST(Parent, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  ParentPovm p(3, {2, 3});
  for (std::size_t a = 0; a < p.size(); ++a) p[a] = testing::random_psd(3, rng);
  const ParentPovm q = io::parent_from_json(reparse(io::to_json(p)));
  EXPECT_EQ(q.dim(), 3);
  EXPECT_EQ(q.outcome_counts(), p.outcome_counts());
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t a = 0; a < p.size(); ++a) EXPECT_TRUE(bit_equal(q[a], p[a])) << a;
}

TEST(Parent, ElementDimensionMismatchThrows) {
  json j = io::to_json(ParentPovm(2, {2, 2}));
  j["elements"][0]["matrix"] = io::to_json(CMatrix::Identity(3, 3));
  EXPECT_THROW(io::parent_from_json(j), std::invalid_argument);
}

TEST(Records, VerdictRecordKeys) {
  TableRowVerdict row;
  row.params = {3, 0.005, 0.50005, 30};
  row.d_sub = 3;
  row.result.eta_star = 0.99994;
  row.result.eta_upper = 0.99994;
  row.result.verdict = Verdict::kIncompatible;
  const json j = io::verdict_record(2, row);
  for (const char* k : {"n", "count", "r", "tau", "d", "eta_star", "eta_upper", "verdict", "marginal_residual",
                        "psd_residual", "iterations", "seconds"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("verdict"), "INCOMPATIBLE");
  EXPECT_EQ(j.at("d"), 3);
}

TEST(Records, JmResultCarriesNoiseModel) {
  JmResult r;
  r.verdict = Verdict::kUndetermined;
  const json j = io::to_json(r);
  EXPECT_EQ(j.at("verdict"), "UNDETERMINED");
  EXPECT_EQ(j.at("noise_model"), std::string(io::kNoiseModel));
}

TEST(Records, NanIsWrittenAsNull) {
  PairTestReport r;
  r.test_value = std::numeric_limits<double>::quiet_NaN();
  const json j = io::to_json(r);
  EXPECT_TRUE(j.at("test_value").is_null());
  EXPECT_NO_THROW(json::parse(j.dump()));
  r.test_value = 1.5e-4;
  EXPECT_EQ(io::to_json(r).at("test_value"), 1.5e-4);
}

TEST(Records, UsdReport) {
  const json j = io::to_json(usd_report(3, 0.01, 0.5));
  EXPECT_EQ(j.at("threshold"), 3);
  EXPECT_EQ(j.at("contradiction"), true);
  EXPECT_EQ(j.at("p_d"), p_d(3, 0.01));
}

TEST(Manifest, Keys) {
  const json m = io::manifest("usd", json{{"n", 3}}, 0.25);
  EXPECT_EQ(m.at("command"), "usd");
  EXPECT_EQ(m.at("params").at("n"), 3);
  EXPECT_EQ(m.at("wall_time"), 0.25);
  for (const char* k : {"lossjm", "eigen", "boost", "compiler"}) EXPECT_TRUE(m.at("versions").contains(k)) << k;
}

TEST(Table1Rows, Values) {
  const double r[] = {0.005, 0.010, 0.065, 0.045, 0.035, 0.025, 0.015, 0.010, 0.005};
  const double eps[] = {0.00005, 0.00018, 0.00118, 0.00135, 0.00100, 0.00055, 0.00015, 0.00010, 0.00005};
  ASSERT_EQ(tools::kTable1Rows.size(), 9u);
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(tools::kTable1Rows[i].n, i + 2);
    EXPECT_EQ(tools::kTable1Rows[i].r, r[i]);
    EXPECT_EQ(tools::kTable1Rows[i].epsilon, eps[i]);
  }
  EXPECT_DOUBLE_EQ(tools::table1_row(4)->tau_min(), 0.25118);
  EXPECT_FALSE(tools::table1_row(11).has_value());
}

}  // namespace
}  // namespace lossjm
