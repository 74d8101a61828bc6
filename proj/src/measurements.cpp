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

#include "lossjm/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lossjm/fock.hpp"

namespace lossjm {

namespace {

CMatrix pauli(int i) {
  CMatrix s(2, 2);
  switch (i) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

PovmValidity check_povm(const Povm& p) {
  PovmValidity v;
  if (p.elements.empty()) {
    v.sum_residual = 1;
    return v;
  }
  const int d = p.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& e : p.elements) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("check_povm: ragged POVM");
    v.hermiticity = std::max(v.hermiticity, hermiticity_defect(e));
    const CMatrix h = (e + e.adjoint()) / 2.0;
    v.psd_residual = std::max(v.psd_residual, psd_residual(h));
    sum += e;
  }
  v.sum_residual = max_abs(CMatrix(sum - CMatrix::Identity(d, d)));
  return v;
}

void validate_shape(const MeasurementSet& set) {
  if (set.povms.empty()) throw std::invalid_argument("measurement set is empty");
  const int d = set.dim();
  if (d < 1) throw std::invalid_argument("measurement set has dimension 0");
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (set[j].elements.empty())
      throw std::invalid_argument("measurement " + std::to_string(j) + " has no outcomes");
    for (const auto& e : set[j].elements)
      if (e.rows() != d || e.cols() != d)
        throw std::invalid_argument("measurement " + std::to_string(j) +
                                    " does not share the set dimension");
  }
}

Povm displaced_onoff(cplx mu, int d) {
  if (d < 2) throw std::invalid_argument("displaced_onoff: d must be >= 2");
  const CVector ket = coherent_ket<double>(mu, d);
  CMatrix click = ket * ket.adjoint();
  CMatrix none = CMatrix::Identity(d, d) - click;
  return Povm{{std::move(click), std::move(none)}};
}

cplx DisplacedFamilyParams::amplitude(int k) const {
  return std::polar(r, 2.0 * std::numbers::pi * k / count);
}

MeasurementSet symmetric_family(const DisplacedFamilyParams& p) {
  if (p.count < 1) throw std::invalid_argument("symmetric_family: count must be >= 1");
  if (p.r < 0) throw std::invalid_argument("symmetric_family: r must be >= 0");
  const LossChannel<double> ch(p.tau);
  MeasurementSet set;
  set.povms.reserve(static_cast<std::size_t>(p.count));
  for (int k = 0; k < p.count; ++k)
    set.povms.push_back(apply_dual(ch, displaced_onoff(p.amplitude(k), p.d)));
  return set;
}

Povm apply_dual(const LossChannel<double>& ch, const Povm& p) {
  if (p.elements.empty()) return p;
  const int d = p.dim();
  Povm out;
  out.elements.reserve(p.outcomes());
  CMatrix rest = CMatrix::Identity(d, d);
  for (std::size_t a = 0; a + 1 < p.outcomes(); ++a) {
    out.elements.push_back(lossjm::apply_dual(ch, p[a]));
    rest -= out.elements.back();
  }
  // Unitality of the dual channel: the last image is the complement.
  out.elements.push_back(std::move(rest));
  return out;
}

MeasurementSet apply_dual(const LossChannel<double>& ch, const MeasurementSet& set) {
  MeasurementSet out;
  out.povms.reserve(set.size());
  for (const auto& p : set.povms) out.povms.push_back(apply_dual(ch, p));
  return out;
}

MeasurementSet project_set(const MeasurementSet& set, int d_sub) {
  validate_shape(set);
  if (d_sub < 1 || d_sub > set.dim())
    throw std::invalid_argument("project_set: d_sub must lie in [1, dim]");
  MeasurementSet out;
  for (const auto& p : set.povms) {
    Povm q;
    for (const auto& e : p.elements) q.elements.push_back(e.topLeftCorner(d_sub, d_sub));
    out.povms.push_back(std::move(q));
  }
  return out;
}

QubitMeasurementParams bloch_params(const Povm& p) {
  if (p.dim() != 2 || p.outcomes() != 2)
    throw std::invalid_argument("bloch_params: a two-outcome qubit POVM is required");
  const CMatrix& plus = p[0];
  QubitMeasurementParams q;
  q.gamma = plus.trace().real() - 1.0;
  for (int i = 0; i < 3; ++i) q.m(i) = (plus * pauli(i)).trace().real();
  return q;
}

Povm from_bloch(const QubitMeasurementParams& q) {
  CMatrix ms = CMatrix::Zero(2, 2);
  for (int i = 0; i < 3; ++i) ms += q.m(i) * pauli(i);
  const CMatrix id = CMatrix::Identity(2, 2);
  return Povm{{0.5 * ((1 + q.gamma) * id + ms), 0.5 * ((1 - q.gamma) * id - ms)}};
}

Povm conjugate(const Povm& p, const CMatrix& u) {
  Povm out;
  for (const auto& e : p.elements) out.elements.push_back(u * e * u.adjoint());
  return out;
}

MeasurementSet conjugate(const MeasurementSet& set, const CMatrix& u) {
  MeasurementSet out;
  for (const auto& p : set.povms) out.povms.push_back(conjugate(p, u));
  return out;
}

CVector random_ket(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

Povm random_two_outcome_povm(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CVector psi = random_ket(d, rng);
  const double w = u(rng);
  const double c = u(rng);
  CMatrix first = w * (psi * psi.adjoint()) + (1 - w) * c * CMatrix::Identity(d, d);
  first = (first + first.adjoint()).eval() / 2.0;
  CMatrix second = CMatrix::Identity(d, d) - first;
  return Povm{{std::move(first), std::move(second)}};
}

MeasurementSet random_measurement_set(int n, int d, std::mt19937_64& rng) {
  MeasurementSet set;
  for (int j = 0; j < n; ++j) set.povms.push_back(random_two_outcome_povm(d, rng));
  return set;
}

}  // namespace lossjm
