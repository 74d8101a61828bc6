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

#include "lossjm/io.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>
#include <boost/version.hpp>

namespace lossjm::io {

namespace {

json vec3(const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); }

/// JSON has no NaN; degenerate values are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("to_json: square matrix required");
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      entries.push_back(m(i, k).real());
      entries.push_back(m(i, k).imag());
    }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw std::invalid_argument("matrix: expected {dim, entries}");
  const int d = j.at("dim").get<int>();
  const json& e = j.at("entries");
  if (d < 1 || !e.is_array() || e.size() != static_cast<std::size_t>(2 * d * d))
    throw std::invalid_argument("matrix: entries must hold 2*dim*dim numbers");
  CMatrix m(d, d);
  std::size_t c = 0;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const double re = e[c++].get<double>();
      const double im = e[c++].get<double>();
      m(i, k) = cplx(re, im);
    }
  return m;
}

json to_json(const MeasurementSet& set) {
  json povms = json::array();
  for (const auto& p : set.povms) {
    json elems = json::array();
    for (const auto& e : p.elements) elems.push_back(to_json(e));
    povms.push_back(std::move(elems));
  }
  return json{{"dim", set.dim()}, {"povms", std::move(povms)}};
}

MeasurementSet measurement_set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("povms")) throw std::invalid_argument("measurement set: expected {dim, povms}");
  MeasurementSet set;
  for (const auto& pj : j.at("povms")) {
    Povm p;
    for (const auto& ej : pj) p.elements.push_back(matrix_from_json(ej));
    set.povms.push_back(std::move(p));
  }
  validate_shape(set);
  if (j.contains("dim") && j.at("dim").get<int>() != set.dim())
    throw std::invalid_argument("measurement set: dim field disagrees with the matrices");
  return set;
}

json to_json(const DisplacedFamilyParams& p) {
  return json{{"count", p.count}, {"r", p.r}, {"tau", p.tau}, {"d", p.d}};
}

DisplacedFamilyParams family_params_from_json(const json& j) {
  DisplacedFamilyParams p;
  p.count = j.at("count").get<int>();
  p.r = j.at("r").get<double>();
  p.tau = j.at("tau").get<double>();
  p.d = j.at("d").get<int>();
  return p;
}

json to_json(const ParentPovm& parent) {
  json elems = json::array();
  for (std::size_t a = 0; a < parent.size(); ++a)
    elems.push_back(json{{"tuple", parent.tuple(a)}, {"matrix", to_json(parent[a])}});
  return json{{"dim", parent.dim()}, {"outcome_counts", parent.outcome_counts()}, {"elements", std::move(elems)}};
}

ParentPovm parent_from_json(const json& j) {
  ParentPovm p(j.at("dim").get<int>(), j.at("outcome_counts").get<std::vector<int>>());
  for (const auto& e : j.at("elements")) {
    CMatrix m = matrix_from_json(e.at("matrix"));
    if (m.rows() != p.dim()) throw std::invalid_argument("parent: element dimension mismatch");
    p.at(e.at("tuple").get<OutcomeTuple>()) = std::move(m);
  }
  return p;
}

json verdict_record(int n, const TableRowVerdict& row) {
  return json{{"n", n},
              {"count", row.params.count},
              {"r", row.params.r},
              {"tau", row.params.tau},
              {"d", row.d_sub},
              {"eta_star", row.result.eta_star},
              {"eta_upper", row.result.eta_upper},
              {"verdict", to_string(row.result.verdict)},
              {"marginal_residual", row.result.marginal_residual},
              {"psd_residual", row.result.psd_residual},
              {"iterations", row.result.iterations},
              {"seconds", row.seconds}};
}

json to_json(const JmResult& r) {
  return json{{"feasible", r.feasible},
              {"eta_star", r.eta_star},
              {"eta_upper", r.eta_upper},
              {"verdict", to_string(r.verdict)},
              {"marginal_residual", r.marginal_residual},
              {"psd_residual", r.psd_residual},
              {"iterations", r.iterations},
              {"noise_model", kNoiseModel}};
}

json to_json(const PairTestReport& r) {
  return json{{"gamma1", r.gamma1},
              {"gamma2", r.gamma2},
              {"m1", vec3(r.m1)},
              {"m2", vec3(r.m2)},
              {"F1", r.f1},
              {"F2", r.f2},
              {"test_value", number_or_null(r.test_value)},
              {"incompatible", r.incompatible},
              {"degenerate", r.degenerate},
              {"pauli_order", "x,y,z"}};
}

json to_json(const UsdReport& r) {
  return json{{"n", r.n},
              {"r", r.r},
              {"tau", r.tau},
              {"p_d", r.p_d},
              {"p_lon", r.p_lon},
              {"p_d_approx", r.p_d_approx},
              {"p_lon_approx", r.p_lon_approx},
              {"lossy_success", r.lossy_success},
              {"lossy_success_approx", r.lossy_success_approx},
              {"threshold", r.threshold},
              {"contradiction", r.contradiction}};
}

json versions() {
  return json{{"lossjm", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"boost", BOOST_LIB_VERSION},
              {"compiler", __VERSION__}};
}

json manifest(std::string_view command, const json& params, double wall_time) {
  return json{{"command", command}, {"params", params}, {"versions", versions()}, {"wall_time", wall_time}};
}

}  // namespace lossjm::io
